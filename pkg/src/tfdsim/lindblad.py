"""Physical model and brute-force master-equation integrator.

The model: two bosonic modes driven by an external field,

    H(t) = eps0 a+a + eps1 b+b + g1 (a+b E1(t) + b+a E1*(t)),
    E1(t) = E1 exp(-i omega1 t),

with a single dissipation channel of jump operator J = a+b at rate gamma1,

    drho/dt = -i [H, rho] + gamma1 (J rho J+ - {J+J, rho}/2).

The dissipator is implemented in this explicitly positivity-compatible form;
it expands exactly to the equivalent two-commutator expression
(gamma1/2)([J rho, J+] + [J, rho J+]), which the tests assert entrywise.
Everything conserves the total excitation number a+a + b+b, including after
truncation, so per-mode truncation introduces no boundary leakage.

This module is the ground-truth oracle that the vectorized (doubled-space)
route in ``tfd`` is validated against.  hbar = 1 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .errors import NumericalFailure
from .fock import DensityMatrix, TwoModeSpace, annihilation, embed, number_op
from .numerics import Tolerances, DEFAULT_TOL, as_complex_matrix, eig_hermitian, \
    rk4_integrate, trace_norm
from . import fock


@dataclass(frozen=True)
class ModelParams:
    """Physical inputs of the two-mode model (hbar = 1 units)."""

    eps0: float
    eps1: float
    g1: float
    E1: complex
    omega1: float = 0.0
    gamma1: float = 0.0

    def __post_init__(self):
        if self.gamma1 < 0:
            raise ValueError("gamma1 must be non-negative")

    def field_at(self, t: float) -> complex:
        """Drive amplitude E1(t) = E1 exp(-i omega1 t)."""
        if self.omega1 == 0.0:
            return complex(self.E1)
        return complex(self.E1) * np.exp(-1j * self.omega1 * t)


@dataclass
class LindbladGenerator:
    """Hamiltonian snapshot + jump operator J = a+b and its rate.

    ``built_at`` records the time of the Hamiltonian snapshot so the
    time-dependent drive phase can be re-applied relative to it.
    """

    hamiltonian: np.ndarray = field(repr=False)
    jump: np.ndarray = field(repr=False)
    rate: float = 0.0
    built_at: float = 0.0

    def __post_init__(self):
        h = self.hamiltonian
        dev = np.abs(h - h.conj().T).max()
        if dev > 1e-10 * max(1.0, np.abs(h).max()):
            raise ValueError(f"Hamiltonian not Hermitian (max deviation {dev:.3e})")


def build_hamiltonian(p: ModelParams, space: TwoModeSpace, t: float = 0.0) -> np.ndarray:
    """Assemble H(t) on the truncated composite space."""
    a = embed(annihilation(space.mode_a), "a", space)
    b = embed(annihilation(space.mode_b), "b", space)
    na = embed(number_op(space.mode_a), "a", space)
    nb = embed(number_op(space.mode_b), "b", space)
    e1 = p.field_at(t)
    hop = a.conj().T @ b
    return p.eps0 * na + p.eps1 * nb + p.g1 * (e1 * hop + np.conj(e1) * hop.conj().T)


def make_generator(p: ModelParams, space: TwoModeSpace, t: float = 0.0) -> LindbladGenerator:
    a = embed(annihilation(space.mode_a), "a", space)
    b = embed(annihilation(space.mode_b), "b", space)
    jump = a.conj().T @ b
    return LindbladGenerator(build_hamiltonian(p, space, t), jump, p.gamma1, built_at=t)


def _as_matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return as_complex_matrix(rho)


def dissipator_rhs(rho, gen: LindbladGenerator) -> np.ndarray:
    """gamma1 (J rho J+ - {J+J, rho}/2); traceless by construction."""
    m = _as_matrix(rho)
    j = gen.jump
    jd = j.conj().T
    jdj = jd @ j
    return gen.rate * (j @ m @ jd - 0.5 * (jdj @ m + m @ jdj))


def master_rhs(rho, p: ModelParams, gen: LindbladGenerator, t: float = 0.0) -> np.ndarray:
    """-i[H(t), rho] + dissipator."""
    m = _as_matrix(rho)
    if p.omega1 == 0.0:
        h = gen.hamiltonian
    else:
        # time-dependent drive phase: only the hopping term rotates,
        # relative to the snapshot time of the generator
        de = p.field_at(t) - p.field_at(gen.built_at)
        hop = gen.jump
        h = gen.hamiltonian + p.g1 * (de * hop + np.conj(de) * hop.conj().T)
    return -1j * (h @ m - m @ h) + dissipator_rhs(m, gen)


def integrate_master(rho0: DensityMatrix, p: ModelParams, gen: LindbladGenerator,
                     t1: float, dt: float) -> DensityMatrix:
    """Fixed-step RK4 trajectory endpoint of the master equation.

    Uses the compiled kernel when the drive phase is static (omega1 = 0),
    otherwise falls back to the generic integrator.  Raises NumericalFailure
    on non-finite values.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t1 < 0:
        raise ValueError("t1 must be non-negative")
    m0 = np.ascontiguousarray(rho0.matrix, dtype=np.complex128)
    if t1 == 0.0:
        return DensityMatrix(rho0.space, m0.copy())
    if p.omega1 == 0.0:
        n_full = int(np.floor(t1 / dt + 1e-12))
        last_dt = t1 - n_full * dt
        if last_dt < 1e-12 * max(dt, 1.0):
            last_dt = 0.0
        j = np.ascontiguousarray(gen.jump)
        jd = np.ascontiguousarray(gen.jump.conj().T)
        out, ok = kernels.lindblad_rk4(
            np.ascontiguousarray(gen.hamiltonian), j, jd,
            np.ascontiguousarray(jd @ j), float(gen.rate),
            m0, n_full, float(dt), float(last_dt))
        if not ok:
            raise NumericalFailure("integrate_master: non-finite state encountered")
        return DensityMatrix(rho0.space, out)
    out = rk4_integrate(lambda t, m: master_rhs(m, p, gen, t), m0, 0.0, t1, dt)
    return DensityMatrix(rho0.space, out)


def fock_log_negativity(rho: DensityMatrix) -> float:
    """ln of the trace norm of the partial transpose (mode b).

    Fock-space counterpart of the Gaussian logarithmic negativity; used as
    the entanglement oracle.
    """
    return float(np.log(trace_norm(fock.partial_transpose(rho, "b"))))


def von_neumann_entropy(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOL) -> float:
    """-Tr[rho ln rho] with the 0 ln 0 = 0 convention."""
    vals, _ = eig_hermitian(rho.matrix, tol)
    lam = vals[vals > tol.atol]
    return float(-(lam * np.log(lam)).sum())
