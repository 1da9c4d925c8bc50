"""Covariance matrices of the squeezed-state families and their measures.

Covariance matrices are real symmetric 4x4 numpy arrays over the quadratures
of two modes, vacuum variance 1/2, block layout

    sigma = [[A, C], [C^T, B]],   A = rows/cols 0-1, B = 2-3.

Two state families are provided: the two-mode squeezed vacuum pattern and the
pair of single-mode squeezed states.  Symplectic eigenvalues come from the
block-determinant invariant

    d± = sqrt[(Delta ± sqrt(Delta^2 - 4 det sigma)) / 2],
    Delta = det A + det B ± 2 det C,

with the minus sign after partial transposition and the plus sign for the
untransposed matrix (purity of the squeezed vacuum forces the plus sign).
Logarithmic negativity uses the natural logarithm, E = max(0, -ln(2 d~_-)),
matching the natural log in the entropy function f(x).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnphysicalCovariance


@dataclass(frozen=True)
class SqueezeSpec:
    """Squeeze magnitude r >= 0 and phase phi of xi = r e^{i phi}."""

    r_mag: float
    phi: float = 0.0

    def __post_init__(self):
        if self.r_mag < 0:
            raise ValueError("squeeze magnitude must be non-negative")


def cov_two_mode_squeezed(s: SqueezeSpec) -> np.ndarray:
    """Covariance pattern of the two-mode squeezed family.

    f = cosh(2r)/2, g = -sinh(2r) sin(2 phi)/2, h = sinh(2r) cos(2 phi)/2,
    arranged as [[f,g,h,0],[g,f,0,-h],[h,0,f,g],[0,-h,g,f]].
    """
    f = 0.5 * np.cosh(2.0 * s.r_mag)
    g = -0.5 * np.sinh(2.0 * s.r_mag) * np.sin(2.0 * s.phi)
    h = 0.5 * np.sinh(2.0 * s.r_mag) * np.cos(2.0 * s.phi)
    return np.array([[f, g, h, 0.0],
                     [g, f, 0.0, -h],
                     [h, 0.0, f, g],
                     [0.0, -h, g, f]])


def cov_two_single_mode_squeezed(s: SqueezeSpec) -> np.ndarray:
    """Covariance pattern of two equal single-mode squeezed states.

    c = [cosh(2r) + sinh(2r) cos(2 phi)]/2, d = [cosh(2r) - sinh(2r) cos(2 phi)]/2,
    e = sinh(2r) sin(2 phi)/2, arranged as
    [[c,0,0,e],[0,d,e,0],[0,e,c,0],[e,0,0,d]].
    """
    ch = np.cosh(2.0 * s.r_mag)
    sh = np.sinh(2.0 * s.r_mag)
    c = 0.5 * (ch + sh * np.cos(2.0 * s.phi))
    d = 0.5 * (ch - sh * np.cos(2.0 * s.phi))
    e = 0.5 * sh * np.sin(2.0 * s.phi)
    return np.array([[c, 0.0, 0.0, e],
                     [0.0, d, e, 0.0],
                     [0.0, e, c, 0.0],
                     [e, 0.0, 0.0, d]])


def _check_covariance(sigma) -> np.ndarray:
    m = np.asarray(sigma, dtype=float)
    if m.shape != (4, 4):
        raise ValueError(f"covariance matrix must be 4x4, got {m.shape}")
    if np.abs(m - m.T).max() > 1e-12 * max(1.0, np.abs(m).max()):
        raise ValueError("covariance matrix must be symmetric")
    return m


def _block_dets(m: np.ndarray):
    det_a = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    det_b = m[2, 2] * m[3, 3] - m[2, 3] * m[3, 2]
    det_c = m[0, 2] * m[1, 3] - m[0, 3] * m[1, 2]
    return det_a, det_b, det_c


def symplectic_eigs(sigma, transposed: bool) -> tuple[float, float]:
    """Symplectic eigenvalues (d_plus, d_minus), d_plus >= d_minus >= 0.

    ``transposed=True`` gives the eigenvalues after partial transposition of
    mode b (det C flips sign in the invariant).
    """
    m = _check_covariance(sigma)
    det_a, det_b, det_c = _block_dets(m)
    det_sigma = np.linalg.det(m)
    sign = -2.0 if transposed else 2.0
    delta = det_a + det_b + sign * det_c
    disc = delta * delta - 4.0 * det_sigma
    if disc < -1e-12:
        raise UnphysicalCovariance(f"negative symplectic discriminant {disc:.3e}")
    root = np.sqrt(max(disc, 0.0))
    d_plus_sq = 0.5 * (delta + root)
    d_minus_sq = 0.5 * (delta - root)
    if d_minus_sq < -1e-12:
        raise UnphysicalCovariance(f"negative squared symplectic eigenvalue {d_minus_sq:.3e}")
    return float(np.sqrt(max(d_plus_sq, 0.0))), float(np.sqrt(max(d_minus_sq, 0.0)))


def _physicality_slack(m: np.ndarray) -> float:
    """Tolerance for the d_- >= 1/2 bound.

    The determinant invariant cancels catastrophically for (near-)pure
    states, and the square root turns roundoff-level discriminants into
    deviations of order sqrt(eps) * scale^2, so the slack must grow with
    the covariance entries; 1e-10 is the floor for order-one matrices.
    """
    scale = 1.0 + float(np.abs(m).max())
    return max(1e-10, 16.0 * np.sqrt(np.finfo(float).eps) * scale * scale)


def _require_physical(m: np.ndarray) -> None:
    _, d_minus = symplectic_eigs(m, transposed=False)
    if d_minus < 0.5 - _physicality_slack(m):
        raise UnphysicalCovariance(
            f"minimum symplectic eigenvalue {d_minus:.12f} violates the vacuum bound 1/2")


def log_negativity(sigma) -> float:
    """max(0, -ln(2 d~_-)) with d~_- from the partially transposed matrix."""
    m = _check_covariance(sigma)
    _require_physical(m)
    _, d_minus = symplectic_eigs(m, transposed=True)
    return float(max(0.0, -np.log(2.0 * d_minus)))


def _entropy_f(x: float, slack: float = 1e-10) -> float:
    """f(x) = (x+1/2) ln(x+1/2) - (x-1/2) ln(x-1/2), with f(1/2) = 0.

    Arguments within ``slack`` below 1/2 are treated as exactly 1/2 (they
    arise from roundoff on physical matrices); anything lower is an error.
    """
    if x < 0.5 - slack:
        raise UnphysicalCovariance(f"entropy argument {x} below the vacuum value 1/2")
    x = max(x, 0.5)
    plus = (x + 0.5) * np.log(x + 0.5)
    y = x - 0.5
    minus = y * np.log(y) if y > 0.0 else 0.0
    return float(plus - minus)


def mutual_information(sigma) -> float:
    """f(sqrt(det A)) + f(sqrt(det B)) - f(d+) - f(d-) on the untransposed matrix.

    Subadditivity guarantees the result is nonnegative for every physical
    covariance, so roundoff-level negative values are clamped to zero.
    """
    m = _check_covariance(sigma)
    _require_physical(m)
    slack = _physicality_slack(m)
    det_a, det_b, _ = _block_dets(m)
    d_plus, d_minus = symplectic_eigs(m, transposed=False)
    out = (_entropy_f(float(np.sqrt(det_a)), slack) + _entropy_f(float(np.sqrt(det_b)), slack)
           - _entropy_f(d_plus, slack) - _entropy_f(d_minus, slack))
    return max(0.0, out)
