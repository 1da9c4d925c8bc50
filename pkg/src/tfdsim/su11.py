"""su(1,1) algebra realizations and the normal-ordering factorization.

Canonical normalization is used throughout: [K3, K±] = ±K± and
[K-, K+] = 2 K3.  Realizations:

* two-mode:    K+ = a+b+,   K- = ab,     K3 = (a+a + b+b + 1)/2
* single-mode: K+ = A+A+/2, K- = AA/2,   K3 = (A+A + AA+)/4
* faithful 2x2 (non-unitary):
      K+ = [[0,1],[0,0]], K- = [[0,0],[-1,0]], K3 = diag(1/2, -1/2)

The factorization

    exp(xi3 K3 + xi+ K+ + xi- K-)
      = exp(G+ K+) exp(ln G3 K3) exp(G- K-)

holds as an algebra identity; ``disentangle`` computes the factors and
``rep2x2`` provides the 2x2 oracle the identity is checked against.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFactorization, TruncationOverflow
from .fock import FockSpace, TwoModeSpace, annihilation, embed, number_op
from .numerics import Tolerances, DEFAULT_TOL, mat_exp


@dataclass(frozen=True)
class SU11Coeffs:
    """Exponent coefficients of K3, K+, K-."""

    xi3: complex
    xi_plus: complex
    xi_minus: complex


@dataclass(frozen=True)
class GammaFactors:
    """Factors of the normal-ordered product form.

    ``phi`` is the branch point parameter, phi^2 = xi3^2/4 - xi+ xi-.
    ``ln_gamma3`` is the branch-resolved logarithm of gamma3 needed when K3
    has half-integer spectrum (gamma3^(1/2) must equal 1/w, w the factor the
    construction produces, not the other square root).
    """

    gamma_plus: complex
    gamma3: complex
    gamma_minus: complex
    phi: complex
    ln_gamma3: complex


def _sinhc(z: complex) -> complex:
    """sinh(z)/z with the removable singularity handled by series."""
    if abs(z) < 1e-4:
        z2 = z * z
        return 1.0 + z2 / 6.0 * (1.0 + z2 / 20.0 * (1.0 + z2 / 42.0))
    return cmath.sinh(z) / z


def disentangle(c: SU11Coeffs, denom_tol: float = 1e-14) -> GammaFactors:
    """Normal-ordering factors of exp(xi3 K3 + xi+ K+ + xi- K-).

        G±  = 2 xi± sinh(phi) / (2 phi cosh(phi) - xi3 sinh(phi))
        G3  = (cosh(phi) - xi3 sinh(phi) / (2 phi))^-2

    evaluated through sinh(phi)/phi so phi -> 0 is regular.  Raises
    DegenerateFactorization when the (phi-regularized) denominator
    2 cosh(phi) - xi3 sinh(phi)/phi vanishes within ``denom_tol``.
    """
    xi3 = complex(c.xi3)
    xp = complex(c.xi_plus)
    xm = complex(c.xi_minus)
    phi = cmath.sqrt(xi3 * xi3 / 4.0 - xp * xm)
    ch = cmath.cosh(phi)
    shc = _sinhc(phi)
    denom = 2.0 * ch - xi3 * shc
    if abs(denom) < denom_tol:
        raise DegenerateFactorization(
            f"factorization denominator vanished (|denom| = {abs(denom):.3e})")
    g_plus = 2.0 * xp * shc / denom
    g_minus = 2.0 * xm * shc / denom
    w = 0.5 * denom  # = cosh(phi) - xi3 sinh(phi)/(2 phi)
    ln_g3 = -2.0 * cmath.log(w)
    g3 = 1.0 / (w * w)
    return GammaFactors(g_plus, g3, g_minus, phi, ln_g3)


def rep2x2_generator(c: SU11Coeffs) -> np.ndarray:
    """xi3 K3 + xi+ K+ + xi- K- in the 2x2 representation."""
    return np.array([[c.xi3 / 2.0, c.xi_plus],
                     [-c.xi_minus, -c.xi3 / 2.0]], dtype=np.complex128)


def rep2x2(c: SU11Coeffs, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Single-exponential 2x2 matrix exp(xi3 K3 + xi+ K+ + xi- K-)."""
    return mat_exp(rep2x2_generator(c), tol)


def rep2x2_product(g: GammaFactors) -> np.ndarray:
    """Product form exp(G+ K+) exp(ln G3 K3) exp(G- K-) in 2x2.

    Each factor is closed form: the K± exponentials are unipotent and the K3
    one is diagonal, using the branch-resolved square root of gamma3.
    """
    sqrt_g3 = cmath.exp(0.5 * g.ln_gamma3)
    up = np.array([[1.0, g.gamma_plus], [0.0, 1.0]], dtype=np.complex128)
    mid = np.array([[sqrt_g3, 0.0], [0.0, 1.0 / sqrt_g3]], dtype=np.complex128)
    low = np.array([[1.0, 0.0], [-g.gamma_minus, 1.0]], dtype=np.complex128)
    return up @ mid @ low


def two_mode_generators(space: TwoModeSpace):
    """(K+, K-, K3) with K+ = a+b+, K- = ab, K3 = (a+a + b+b + 1)/2."""
    a = embed(annihilation(space.mode_a), "a", space)
    b = embed(annihilation(space.mode_b), "b", space)
    na = embed(number_op(space.mode_a), "a", space)
    nb = embed(number_op(space.mode_b), "b", space)
    k_minus = a @ b
    k_plus = k_minus.conj().T
    k3 = 0.5 * (na + nb + np.eye(space.dim))
    return k_plus, k_minus, k3


def single_mode_generators(space: FockSpace):
    """(K+, K-, K3) with K+ = A+A+/2, K- = AA/2, K3 = (A+A + AA+)/4."""
    a = annihilation(space)
    ad = a.conj().T
    k_minus = 0.5 * (a @ a)
    k_plus = 0.5 * (ad @ ad)
    k3 = 0.25 * (ad @ a + a @ ad)
    return k_plus, k_minus, k3


def _top_level_fraction(state: np.ndarray, space: TwoModeSpace) -> float:
    """Squared-norm fraction carried by the two highest total-number levels."""
    da, db = space.mode_a.dim, space.mode_b.dim
    n_max = (da - 1) + (db - 1)
    prob = np.abs(state.reshape(da, db)) ** 2
    total = prob.sum()
    if total == 0.0:
        return 0.0
    top = 0.0
    for na in range(da):
        for nb in range(db):
            if na + nb >= n_max - 1:
                top += prob[na, nb]
    return float(top / total)


def evolve_factored(state0, g: GammaFactors, scalar_phase: complex,
                    space: TwoModeSpace, generators=None,
                    tol: Tolerances = DEFAULT_TOL,
                    leak_tol: float = 1e-10) -> np.ndarray:
    """Apply exp(G+ K+) exp(ln G3 K3) exp(G- K-) e^{scalar_phase} to a state.

    The three exponentials act right-to-left via ``mat_exp`` on the truncated
    generators (two-mode realization by default).  Raises TruncationOverflow
    if the two highest total-number levels carry more than ``leak_tol`` of
    the squared norm afterwards, which signals that the truncation was too
    small for the requested coefficients.
    """
    k_plus, k_minus, k3 = generators if generators is not None else two_mode_generators(space)
    psi = np.asarray(state0, dtype=np.complex128).reshape(-1)
    psi = mat_exp(g.gamma_minus * k_minus, tol) @ psi
    psi = mat_exp(g.ln_gamma3 * k3, tol) @ psi
    psi = mat_exp(g.gamma_plus * k_plus, tol) @ psi
    psi = np.exp(scalar_phase) * psi
    if _top_level_fraction(psi, space) > leak_tol:
        raise TruncationOverflow(
            "factored evolution leaked into the top Fock levels; increase truncation")
    return psi
