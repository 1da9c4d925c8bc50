"""Mean-field reduction of the nonlinear generator and short-time dynamics.

The quartic dissipative terms of the vectorized generator are replaced by
quadratic operators times the mean fields Delta = <ab> and Delta1 = <a+b>.
Derived constants (hbar = 1):

    r   = eps0 / (2i) - gamma1/2
    s   = eps1 / i    - gamma1/2
    eta = g1 E1 / i   + gamma1 Delta1 / 2

The linearized generator (non-tilde part) is

    -i H1 = rs (a+a + b+b) + eta sqrt(rs) (a+b + b+a)
            - (gamma1 Delta / 2) sqrt(rs) (ab + a+b+),

with a mirrored tilde part.  Scenario sweeps treat W = rs as a direct real
input; ``derived_params`` computes it from model parameters and warns when
the product r*s picks up a significant imaginary part.

The short-time self-consistent evaluations of Delta(t) and Delta1(t) follow
the closed first-order-in-t forms, with thermal double sums over geometric
weights nbar^n/(nbar+1)^(n+1) truncated at n_max (default 2).  The
eta = 0 form bakes in the unnormalized hyperbolic coefficients
(mu = W, nu = -gamma1 Delta sqrt(W)/2); the eta != 0 forms use the
normalized Bogoliubov coefficients in their thermal sums.  Self-consistency
defaults to a single substitution pass (Delta frozen at its t = 0 value),
optionally refined by a damped fixed-point iteration.
"""

from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailure, UnstableRegime
from .fock import TwoModeSpace, annihilation, embed, number_op, thermal_weight
from .lindblad import ModelParams


@dataclass(frozen=True)
class MeanFields:
    """Mean-field inputs: delta = <ab>, delta1 = <a+b>, c the integration
    constant multiplying delta at t = 0."""

    delta: complex
    delta1: complex = 0.0
    c: complex = 1.0


@dataclass(frozen=True)
class DerivedParams:
    r: complex
    s: complex
    eta: complex
    W: float
    W_prime: float


@dataclass(frozen=True)
class QuadraticHamiltonian:
    """Quadratic generator m (a+a + b+b) + hop (a+b + b+a) + n (ab + a+b+) + offset.

    ``m``/``n`` follow the coefficient-matrix naming of the Bogoliubov
    construction; ``hop`` carries the drive/mean-field hopping term.
    """

    m: complex
    n: complex
    hop: complex = 0.0
    offset: complex = 0.0

    def to_matrix(self, space: TwoModeSpace) -> np.ndarray:
        a = embed(annihilation(space.mode_a), "a", space)
        b = embed(annihilation(space.mode_b), "b", space)
        na = embed(number_op(space.mode_a), "a", space)
        nb = embed(number_op(space.mode_b), "b", space)
        hop = a.conj().T @ b
        pair = a @ b
        out = self.m * (na + nb) + self.hop * (hop + hop.conj().T)
        out = out + self.n * (pair + pair.conj().T)
        return out + self.offset * np.eye(space.dim)


def derived_params(p: ModelParams, mf: MeanFields, w: float | None = None) -> DerivedParams:
    """Compute (r, s, eta) from the model and pick the real frequency W.

    When ``w`` is not supplied it is taken as Re(r*s); a warning is issued
    if |Im(r*s)| > 1e-9 since the scenario formulas treat W as real.
    """
    r = p.eps0 / 2j - p.gamma1 / 2.0
    s = p.eps1 / 1j - p.gamma1 / 2.0
    eta = p.g1 * complex(p.E1) / 1j + p.gamma1 * complex(mf.delta1) / 2.0
    rs = r * s
    if w is None:
        if abs(rs.imag) > 1e-9:
            warnings.warn(f"r*s has imaginary part {rs.imag:.3e}; using its real part as W")
        w = rs.real
    sw = cmath.sqrt(w)
    wp = sw * (sw - eta)
    if abs(wp.imag) > 1e-9:
        warnings.warn(f"W' has imaginary part {wp.imag:.3e}; storing its real part")
    return DerivedParams(r=r, s=s, eta=eta, W=float(w), W_prime=float(wp.real))


def model_params_for_w(w: float, gamma1: float, g1: float = 0.0,
                       E1: complex = 0.0) -> ModelParams:
    """Model parameters with real r*s = w, via eps1 = -eps0/2.

    Requires w > gamma1^2/4 so the mode energies are real.
    """
    if w <= gamma1 * gamma1 / 4.0:
        raise ValueError("need w > gamma1^2/4 for real mode energies")
    eps0 = 2.0 * np.sqrt(w - gamma1 * gamma1 / 4.0)
    return ModelParams(eps0=eps0, eps1=-eps0 / 2.0, g1=g1, E1=E1, gamma1=gamma1)


def linearize(p: ModelParams, mf: MeanFields):
    """Mean-field quadratic generators (non-tilde, tilde) plus derived constants.

    The non-tilde part carries (rs, eta sqrt(rs), -gamma1 Delta sqrt(rs)/2);
    the tilde part mirrors it with flipped number/hopping signs and the same
    pair coefficient.
    """
    d = derived_params(p, mf)
    rs = d.r * d.s
    sqrt_rs = cmath.sqrt(rs)
    pair = -(p.gamma1 * complex(mf.delta) / 2.0) * sqrt_rs
    h1 = QuadraticHamiltonian(m=rs, hop=d.eta * sqrt_rs, n=pair)
    h1_tilde = QuadraticHamiltonian(m=-rs, hop=-d.eta.conjugate() * sqrt_rs, n=pair)
    return h1, h1_tilde, d


def bogoliubov_coeffs(m: complex, n: complex) -> tuple[complex, complex]:
    """Normalized hyperbolic coefficients mu = m/sqrt(m^2-n^2), nu = n/sqrt(m^2-n^2).

    Satisfies mu^2 - nu^2 = 1 exactly.  Raises UnstableRegime when
    |m| <= |n| (no hyperbolic diagonalization).
    """
    m = complex(m)
    n = complex(n)
    if abs(m) <= abs(n):
        raise UnstableRegime(f"no Bogoliubov diagonalization for |m|={abs(m)} <= |n|={abs(n)}")
    root = cmath.sqrt(m * m - n * n)
    return m / root, n / root


def _fixed_point(update, start: complex, damping: float = 0.5,
                 ftol: float = 1e-10, max_iter: int = 500) -> complex:
    prev = complex(start)
    scale = max(1.0, abs(start))
    for _ in range(max_iter):
        nxt = (1.0 - damping) * prev + damping * update(prev)
        if abs(nxt) > 1e6 * scale:
            raise NumericalFailure("mean-field fixed point diverged")
        if abs(nxt - prev) < ftol:
            return nxt
        prev = nxt
    raise NumericalFailure("mean-field fixed point did not converge")


def delta_case1(t: float, gamma1: float, w: float, mf: MeanFields,
                nbar1: float = 0.0, nbar2: float = 0.0, n_max: int = 2,
                refine: bool = False) -> complex:
    """Short-time Delta(t) for the eta = 0 scenario.

    Closed first-order form: c Delta0 + (gamma1 Delta/2) W^(3/2)
    (1 - i W t + i gamma1 t sqrt(W)/2) + a thermal double sum, with the
    unnormalized hyperbolic coefficients mu = W, nu = -gamma1 Delta sqrt(W)/2.
    Delta on the right-hand side stays at its t = 0 value unless ``refine``
    switches on the damped fixed-point iteration.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    sw = np.sqrt(w)

    def rhs(d: complex) -> complex:
        mu = complex(w)
        nu = -0.5 * gamma1 * d * sw
        sinh2r = 2.0 * mu * nu
        cosh2r = mu * mu + nu * nu
        out = complex(mf.c) * complex(mf.delta)
        out += 0.5 * gamma1 * d * w * sw * (1.0 - 1j * w * t + 0.5j * gamma1 * t * sw)
        out += 0.5j * gamma1 ** 2 * w ** 2 * d * nu * nu * t
        for n in range(1, n_max + 1):
            wn = thermal_weight(nbar1, n)
            for m in range(1, n_max + 1):
                wt = wn * thermal_weight(nbar2, m)
                out += wt * (-0.5 * sinh2r * (m + n + 1)
                             + 1j * t * (0.5 * w * sinh2r * (m + n + 1)
                                         + 0.5 * gamma1 * d * sw
                                         * (1.0 + cosh2r * (m + n) + 2.0 * mu * mu)))
        return out

    if refine:
        return _fixed_point(rhs, complex(mf.delta))
    return rhs(complex(mf.delta))


def _normalized_eta0_coeffs(gamma1: float, w: float, d: complex):
    """Normalized (cosh r, sinh r) for the eta = 0 quadratic form."""
    nu_bar = 0.5 * gamma1 * d * np.sqrt(w)
    disc = complex(w * w) - nu_bar * nu_bar
    if abs(disc) < 1e-30 or (abs(disc.imag) < 1e-30 and disc.real <= 0.0):
        raise UnstableRegime("(rs)^2 <= (gamma1 Delta sqrt(rs)/2)^2: no hyperbolic form")
    root = cmath.sqrt(disc)
    return complex(w) / root, nu_bar / root


def delta_case2(t: float, gamma1: float, w: float, mf: MeanFields,
                nbar1: float = 0.0, nbar2: float = 0.0, n_max: int = 2,
                refine: bool = False) -> complex:
    """Short-time Delta(t) for the eta != 0 scenario (evaluated at eta = 0 form).

    c Delta0 - 2i gamma1 Delta W^2 t - i (gamma1^3/2) W Delta^3 t minus a
    thermal double sum whose cosh(2r) uses the normalized Bogoliubov
    coefficients.  Same substitution convention as ``delta_case1``.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")

    def rhs(d: complex) -> complex:
        out = complex(mf.c) * complex(mf.delta)
        out += -2j * gamma1 * d * w * w * t - 0.5j * gamma1 ** 3 * w * d ** 3 * t
        if gamma1 != 0.0 and t != 0.0:
            ch, sh = _normalized_eta0_coeffs(gamma1, w, d)
            cosh2r = ch * ch + sh * sh
            for n in range(1, n_max + 1):
                wn = thermal_weight(nbar1, n)
                for m in range(1, n_max + 1):
                    wt = wn * thermal_weight(nbar2, m)
                    out -= wt * 2j * gamma1 * d * cosh2r * (m + n + 1) * t
        return out

    if refine:
        return _fixed_point(rhs, complex(mf.delta))
    return rhs(complex(mf.delta))


def delta1_case2(t: float, gamma1: float, w: float, mf: MeanFields,
                 nbar1: float = 0.0, nbar2: float = 0.0, n_max: int = 2) -> complex:
    """Short-time Delta1(t) for the eta != 0 scenario.

    c Delta1 + 2 cosh(2r) + 4 i t [-rs sinh(2r) + (gamma1 Delta sqrt(rs)/2)
    cosh(2r)] cosh(r) sinh(r) plus thermal sums, with the normalized eta = 0
    Bogoliubov coefficients.  Raises UnstableRegime outside the hyperbolic
    domain.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    d = complex(mf.delta)
    ch, sh = _normalized_eta0_coeffs(gamma1, w, d)
    cosh2r = ch * ch + sh * sh
    sinh2r = 2.0 * ch * sh
    nu_bar = 0.5 * gamma1 * d * np.sqrt(w)
    bracket = -w * sinh2r + nu_bar * cosh2r
    out = complex(mf.c) * complex(mf.delta1) + 2.0 * cosh2r
    out += 4j * t * bracket * ch * sh
    for n in range(1, n_max + 1):
        wn = thermal_weight(nbar1, n)
        for m in range(1, n_max + 1):
            wt = wn * thermal_weight(nbar2, m)
            out += wt * cosh2r * (n - m)
            out += wt * 4j * t * bracket * ch * sh * (2 * m + 1)
    return out


def squeeze_case1(t: float, gamma1: float, w: float, delta: complex) -> tuple[float, float]:
    """Squeeze magnitude and phase for the eta = 0 scenario.

    r(t) = |(gamma1^2 W^2 / 4) Delta t (1 + W t / 2)|, phi(t) = -W t / 2.
    Monotone nondecreasing in t for real Delta >= 0.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    r = 0.25 * gamma1 ** 2 * w ** 2 * complex(delta) * t * (1.0 + 0.5 * w * t)
    return float(abs(r)), float(-0.5 * w * t)


def squeeze_case2(t: float, gamma1: float, w: float, delta: complex,
                  eta: float = 0.0):
    """Complex squeeze parameters (r_a, r_b) and phases for the eta != 0 scenario.

    With W_a = sqrt(W)(sqrt(W) + eta) and W_b = sqrt(W)(sqrt(W) - eta):

        r_i = (gamma1 t / 2) sqrt(W) Delta (1 - i gamma1 W_i^2 t),
        phi_i = W_i t / 2.

    At eta = 0 both branches coincide exactly.  Downstream covariance
    construction consumes |r| as the squeeze magnitude.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    sw = np.sqrt(w)
    w_a = sw * (sw + eta)
    w_b = sw * (sw - eta)
    base = 0.5 * gamma1 * t * sw * complex(delta)
    r_a = base * (1.0 - 1j * gamma1 * w_a ** 2 * t)
    r_b = base * (1.0 - 1j * gamma1 * w_b ** 2 * t)
    return r_a, r_b, float(0.5 * w_a * t), float(0.5 * w_b * t)
