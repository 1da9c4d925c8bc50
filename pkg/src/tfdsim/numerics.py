"""Dense complex linear algebra and integration primitives.

Matrices are plain numpy ``complex128`` 2-D arrays in row-major order; no
wrapper class is used.  Everything here is a pure function, safe to call
concurrently.  Storage is dense throughout: truncation dimensions stay small
enough (<= ~50 per mode) that sparse formats would only add complexity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import NumericalFailure


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances threaded through the low-level routines.

    atol/rtol are absolute/relative floating-point tolerances;
    max_exp_terms bounds the Taylor order of the matrix exponential.
    """

    atol: float = 1e-12
    rtol: float = 1e-10
    max_exp_terms: int = 128

    def __post_init__(self):
        if self.atol <= 0 or self.rtol <= 0:
            raise ValueError("atol and rtol must be positive")
        if self.max_exp_terms < 1:
            raise ValueError("max_exp_terms must be a positive integer")


DEFAULT_TOL = Tolerances()


def as_complex_matrix(m) -> np.ndarray:
    """Coerce input to a contiguous complex128 2-D array."""
    a = np.ascontiguousarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={a.ndim}")
    return a


def _require_square(a: np.ndarray, who: str) -> None:
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"{who} requires a square matrix, got shape {a.shape}")


def kron(a, b) -> np.ndarray:
    """Kronecker product; entry ((i*rb+k),(j*cb+l)) = a[i,j]*b[k,l]."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def mat_exp(m, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Matrix exponential via scaling-and-squaring with a truncated Taylor series.

    Robust for the non-Hermitian generators produced by the vectorized master
    equation.  Raises NumericalFailure if the series does not converge within
    ``tol.max_exp_terms`` terms.
    """
    a = as_complex_matrix(m)
    _require_square(a, "mat_exp")
    norm = np.abs(a).sum(axis=1).max() if a.size else 0.0
    if not np.isfinite(norm):
        raise NumericalFailure("mat_exp: input contains non-finite entries")
    # Scale so the series argument has infinity-norm <= 0.5; sum the series
    # well below atol so the squared-up result stays within the contract.
    n_squarings = max(0, int(np.ceil(np.log2(norm / 0.5)))) if norm > 0.5 else 0
    term_tol = min(tol.atol, 1e-15)
    out, n_terms = kernels.expm_taylor(a, n_squarings, tol.max_exp_terms, term_tol)
    if n_terms < 0:
        raise NumericalFailure(
            f"mat_exp: Taylor series did not converge within {tol.max_exp_terms} terms"
        )
    return out


def rk4_integrate(rhs, state0, t0: float, t1: float, dt: float) -> np.ndarray:
    """Classical fixed-step fourth-order Runge-Kutta for matrix-valued states.

    ``rhs(t, state)`` must return the time derivative.  The final step is
    shortened to land exactly on ``t1``.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t1 < t0:
        raise ValueError("t1 must be >= t0")
    state = as_complex_matrix(state0).copy()
    span = t1 - t0
    n_full = int(np.floor(span / dt + 1e-12))
    last_dt = span - n_full * dt
    if last_dt < 1e-12 * max(dt, 1.0):
        last_dt = 0.0
    t = t0
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(n_full + 1):
            h = dt if step < n_full else last_dt
            if h == 0.0:
                continue
            k1 = rhs(t, state)
            k2 = rhs(t + 0.5 * h, state + (0.5 * h) * k1)
            k3 = rhs(t + 0.5 * h, state + (0.5 * h) * k2)
            k4 = rhs(t + h, state + h * k3)
            state = state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            t += h
            if not np.isfinite(np.abs(state).sum()):
                raise NumericalFailure(f"rk4_integrate: non-finite state at t={t}")
    return state


def eig_hermitian(m, tol: Tolerances = DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix (ascending eigenvalues).

    Returns ``(eigenvalues, eigenvectors)`` with orthonormal columns.
    Rejects inputs that are not Hermitian within ``tol.atol``.
    """
    a = as_complex_matrix(m)
    _require_square(a, "eig_hermitian")
    dev = np.abs(a - a.conj().T).max()
    scale = max(1.0, np.abs(a).max())
    if dev > tol.atol * scale * 10:
        raise ValueError(f"eig_hermitian: input not Hermitian (max deviation {dev:.3e})")
    vals, vecs = np.linalg.eigh(a)
    return vals, vecs


def trace_norm(m) -> float:
    """Sum of singular values, computed as eigenvalues of sqrt(m^dag m)."""
    a = as_complex_matrix(m)
    _require_square(a, "trace_norm")
    gram = a.conj().T @ a
    vals = np.linalg.eigvalsh(gram)
    return float(np.sqrt(np.clip(vals, 0.0, None)).sum())
