"""Hilbert-space doubling and vectorization of the master equation.

A density matrix rho on the physical space H becomes a vector
|rho> = (rho (x) I) |I> in the doubled space H (x) H~, where
|I> = sum_n |n> (x) |n~> runs over the full composite number basis.  With the
non-tilde factor on the left, |rho> is just the row-major flattening of rho,
and operators act as

    A rho B   <->   (A (x) B^T) vec(rho).

Operators on the duplicate (tilde) factor are obtained by tilde conjugation:
entrywise complex conjugation in the number basis, placed on the right tensor
factor.  The identities A|I> = tilde(A+)|I> hold exactly on the truncated
space because truncation clips both sides identically.

``liouvillian_superoperator`` assembles the full generator of the vectorized
master equation from embedded and tilde operators; its action on vec(rho)
reproduces ``lindblad.master_rhs`` entrywise, which is the central
equivalence this module is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailure
from .fock import DensityMatrix, TwoModeSpace, annihilation, embed, number_op, two_mode_space
from .lindblad import ModelParams
from .numerics import Tolerances, DEFAULT_TOL, as_complex_matrix, kron, mat_exp


@dataclass(frozen=True)
class DoubledSpace:
    """Physical two-mode space plus its tilde duplicate (same dimensions)."""

    physical: TwoModeSpace
    tilde: TwoModeSpace | None = None

    def __post_init__(self):
        if self.tilde is None:
            object.__setattr__(
                self, "tilde",
                two_mode_space(self.physical.mode_a.dim, self.physical.mode_b.dim))
        if (self.tilde.mode_a.dim != self.physical.mode_a.dim
                or self.tilde.mode_b.dim != self.physical.mode_b.dim):
            raise ValueError("tilde dimensions must match the physical space")

    @property
    def physical_dim(self) -> int:
        return self.physical.dim

    @property
    def total_dim(self) -> int:
        return self.physical.dim ** 2


def identity_vector(space: DoubledSpace) -> np.ndarray:
    """|I> = sum over the composite basis of |n> (x) |n~>; entries are 0 or 1."""
    return np.eye(space.physical_dim, dtype=np.complex128).reshape(-1)


def vec(rho, space: DoubledSpace) -> np.ndarray:
    """Vectorize: (rho (x) I)|I>, i.e. the row-major flattening of rho."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else as_complex_matrix(rho)
    d = space.physical_dim
    if m.shape != (d, d):
        raise ValueError(f"density matrix shape {m.shape} does not match space dim {d}")
    return m.reshape(-1).copy()


def unvec(v, space: DoubledSpace) -> np.ndarray:
    """Inverse of ``vec``."""
    w = np.asarray(v, dtype=np.complex128).reshape(-1)
    d = space.physical_dim
    if w.size != d * d:
        raise ValueError(f"vector length {w.size} does not match doubled dim {d * d}")
    return w.reshape(d, d).copy()


def embed_physical(op, space: DoubledSpace) -> np.ndarray:
    """Lift a physical-space operator to op (x) I on the doubled space."""
    return kron(op, np.eye(space.physical_dim))


def tilde_op(op, space: DoubledSpace) -> np.ndarray:
    """Tilde conjugation: I (x) conj(op).

    Satisfies A|I> = tilde_op(A+)|I> for any physical operator A.
    """
    m = as_complex_matrix(op)
    d = space.physical_dim
    if m.shape != (d, d):
        raise ValueError("operator dimension does not match the physical space")
    return kron(np.eye(d), m.conj())


def hat_superoperator(h, space: DoubledSpace, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Commutator superoperator h (x) I - I (x) conj(h) for Hermitian h.

    Acting on vec(rho) this gives vec(h rho - rho h).
    """
    m = as_complex_matrix(h)
    dev = np.abs(m - m.conj().T).max()
    if dev > tol.atol * max(1.0, np.abs(m).max()) * 10:
        raise ValueError(f"hat_superoperator: input not Hermitian (deviation {dev:.3e})")
    return embed_physical(m, space) - tilde_op(m, space)


def liouvillian_superoperator(p: ModelParams, space: DoubledSpace,
                              halve_mode_a_energy: bool = False) -> np.ndarray:
    """Full generator of the vectorized master equation.

    Assembled term by term from embedded and tilde operators:

        L = -i (H (x) I - I (x) conj(H))
            + gamma1 [ J (x) conj(J) - (J+J (x) I + I (x) conj(J+J)) / 2 ]

    with J = a+b.  For every valid rho, L vec(rho) equals
    vec(master_rhs(rho)) to roundoff.

    ``halve_mode_a_energy`` switches the mode-a energy to eps0/2, an
    alternative convention for the coherent part; the default keeps the
    eps0 of the model Hamiltonian, as the equivalence with the master
    equation requires.  The drive phase is taken at t = 0 (a nonzero omega1
    needs the time-dependent RK4 route instead).
    """
    ph = space.physical
    a = embed(annihilation(ph.mode_a), "a", ph)
    b = embed(annihilation(ph.mode_b), "b", ph)
    na = embed(number_op(ph.mode_a), "a", ph)
    nb = embed(number_op(ph.mode_b), "b", ph)
    e1 = complex(p.E1)
    hop = a.conj().T @ b
    eps0 = p.eps0 / 2.0 if halve_mode_a_energy else p.eps0
    h = eps0 * na + p.eps1 * nb + p.g1 * (e1 * hop + np.conj(e1) * hop.conj().T)

    lv = -1j * (embed_physical(h, space) - tilde_op(h, space))
    if p.gamma1 != 0.0:
        j = hop
        jdj = j.conj().T @ j
        lv = lv + p.gamma1 * (
            embed_physical(j, space) @ tilde_op(j, space)
            - 0.5 * embed_physical(jdj, space)
            - 0.5 * tilde_op(jdj, space))
    return lv


def evolve_vectorized(v0, superop, t: float, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Propagate |rho(t)> = exp(L t) |rho(0)> for a time-independent generator."""
    v = np.asarray(v0, dtype=np.complex128).reshape(-1)
    if t == 0.0:
        return v.copy()
    u = mat_exp(as_complex_matrix(superop) * t, tol)
    out = u @ v
    if not np.isfinite(np.abs(out).sum()):
        raise NumericalFailure("evolve_vectorized: non-finite amplitudes")
    return out
