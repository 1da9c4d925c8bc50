"""Truncated bosonic Fock spaces and states.

Single-mode spaces hold number states |0> ... |dim-1>.  Two-mode composites
put mode a on the left tensor factor, so a composite basis index is
``na * dim_b + nb``.  Units: hbar = k_B = 1 everywhere except the SI
conversion inside ``bose_einstein_nbar``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numerics import as_complex_matrix, kron

# CODATA 2018 (exact SI definitions)
HBAR_SI = 1.054571817e-34  # J s
KB_SI = 1.380649e-23       # J / K


@dataclass(frozen=True)
class FockSpace:
    """A single bosonic mode truncated to ``dim`` number states."""

    dim: int
    label: str = "mode"

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("FockSpace dim must be >= 2")


@dataclass(frozen=True)
class TwoModeSpace:
    """Two modes a and b; mode a is the left tensor factor."""

    mode_a: FockSpace
    mode_b: FockSpace

    @property
    def dim(self) -> int:
        return self.mode_a.dim * self.mode_b.dim

    def index(self, na: int, nb: int) -> int:
        """Composite basis index of |na, nb>."""
        if not (0 <= na < self.mode_a.dim and 0 <= nb < self.mode_b.dim):
            raise ValueError(f"occupation ({na},{nb}) outside truncation")
        return na * self.mode_b.dim + nb


def two_mode_space(dim_a: int, dim_b: int | None = None) -> TwoModeSpace:
    """Convenience constructor; equal truncation per mode when dim_b omitted."""
    if dim_b is None:
        dim_b = dim_a
    return TwoModeSpace(FockSpace(dim_a, "a"), FockSpace(dim_b, "b"))


@dataclass
class DensityMatrix:
    """Density matrix on a FockSpace or TwoModeSpace.

    Invariants (checked by ``validate``): Hermitian, unit trace, and
    positive semidefinite up to small numerical slack.
    """

    space: FockSpace | TwoModeSpace
    matrix: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.space.dim

    def validate(self, herm_tol: float = 1e-10, trace_tol: float = 1e-10,
                 eig_floor: float = -1e-8) -> "DensityMatrix":
        m = self.matrix
        if m.shape != (self.dim, self.dim):
            raise ValueError("matrix shape does not match the space dimension")
        herm = np.abs(m - m.conj().T).max()
        if herm > herm_tol:
            raise ValueError(f"density matrix not Hermitian: max deviation {herm:.3e}")
        tr = m.trace()
        if abs(tr - 1.0) > trace_tol:
            raise ValueError(f"density matrix trace {tr} != 1")
        if eig_floor is not None:
            min_eig = np.linalg.eigvalsh(m).min()
            if min_eig < eig_floor:
                raise ValueError(f"density matrix min eigenvalue {min_eig:.3e}")
        return self


def annihilation(space: FockSpace) -> np.ndarray:
    """Truncated annihilation operator: (n-1, n) entry = sqrt(n)."""
    a = np.zeros((space.dim, space.dim), dtype=np.complex128)
    for n in range(1, space.dim):
        a[n - 1, n] = np.sqrt(n)
    return a


def creation(space: FockSpace) -> np.ndarray:
    return annihilation(space).conj().T


def number_op(space: FockSpace) -> np.ndarray:
    return np.diag(np.arange(space.dim, dtype=np.complex128))


def embed(op, which: str, space: TwoModeSpace) -> np.ndarray:
    """Embed a single-mode operator into the composite: a -> op (x) I, b -> I (x) op."""
    m = as_complex_matrix(op)
    if which == "a":
        if m.shape != (space.mode_a.dim,) * 2:
            raise ValueError("operator dimension does not match mode a")
        return kron(m, np.eye(space.mode_b.dim))
    if which == "b":
        if m.shape != (space.mode_b.dim,) * 2:
            raise ValueError("operator dimension does not match mode b")
        return kron(np.eye(space.mode_a.dim), m)
    raise ValueError("which must be 'a' or 'b'")


def thermal_weight(n_bar: float, n: int) -> float:
    """Geometric thermal weight n_bar^n / (n_bar+1)^(n+1)."""
    return n_bar ** n / (n_bar + 1.0) ** (n + 1)


def thermal_state(n_bar: float, space: FockSpace) -> DensityMatrix:
    """Single-mode thermal state, renormalized to unit trace after truncation."""
    if n_bar < 0:
        raise ValueError("n_bar must be non-negative")
    w = np.array([thermal_weight(n_bar, n) for n in range(space.dim)])
    w /= w.sum()
    return DensityMatrix(space, np.diag(w.astype(np.complex128))).validate()


def bose_einstein_nbar(omega: float, temperature: float) -> float:
    """Mean thermal occupation 1/(exp(hbar*omega/kB*T) - 1) in SI units.

    Returns 0 at zero temperature or when the exponent overflows.
    """
    if omega <= 0:
        raise ValueError("omega must be positive")
    if temperature < 0:
        raise ValueError("temperature must be non-negative")
    if temperature == 0.0:
        return 0.0
    x = HBAR_SI * omega / (KB_SI * temperature)
    if x > 700.0:  # exp overflow; occupation is indistinguishable from 0
        return 0.0
    return float(1.0 / np.expm1(x))


def _two_mode_matrix(rho: DensityMatrix) -> tuple[np.ndarray, int, int]:
    if not isinstance(rho.space, TwoModeSpace):
        raise ValueError("operation requires a two-mode density matrix")
    da, db = rho.space.mode_a.dim, rho.space.mode_b.dim
    return rho.matrix.reshape(da, db, da, db), da, db


def partial_trace(rho: DensityMatrix, keep: str) -> DensityMatrix:
    """Reduced density matrix of one mode; trace is preserved."""
    r4, da, db = _two_mode_matrix(rho)
    if keep == "a":
        reduced = np.einsum("ikjk->ij", r4)
        space = rho.space.mode_a
    elif keep == "b":
        reduced = np.einsum("kikj->ij", r4)
        space = rho.space.mode_b
    else:
        raise ValueError("keep must be 'a' or 'b'")
    return DensityMatrix(space, np.ascontiguousarray(reduced))


def partial_transpose(rho: DensityMatrix, which: str = "b") -> np.ndarray:
    """Transpose the chosen mode's subsystem indices; preserves Hermiticity."""
    r4, da, db = _two_mode_matrix(rho)
    if which == "b":
        out = np.einsum("iljk->ikjl", r4)
    elif which == "a":
        out = np.einsum("jkil->ikjl", r4)
    else:
        raise ValueError("which must be 'a' or 'b'")
    return np.ascontiguousarray(out).reshape(da * db, da * db)


def two_mode_squeezed_vacuum(r: float, space: TwoModeSpace, phi: float = 0.0) -> DensityMatrix:
    """Two-mode squeezed vacuum via its Schmidt form.

    |xi> = sech(r) * sum_n (e^{i phi} tanh r)^n |n, n>, truncated and
    renormalized.  Used as the Fock-space ground truth for the Gaussian
    entanglement measures.
    """
    if r < 0:
        raise ValueError("squeeze magnitude must be non-negative")
    d = min(space.mode_a.dim, space.mode_b.dim)
    psi = np.zeros(space.dim, dtype=np.complex128)
    amp = 1.0 / np.cosh(r)
    lam = np.tanh(r) * np.exp(1j * phi)
    for n in range(d):
        psi[space.index(n, n)] = amp * lam ** n
    psi /= np.linalg.norm(psi)
    return DensityMatrix(space, np.outer(psi, psi.conj()))
