"""Numba-compiled hot kernels (see ``_kernels_numpy`` for the reference twins).

Importing this module requires numba; the import is attempted by ``_backend``
and falls back to the numpy twins if it fails.  Matrix products on contiguous
complex128 arrays dispatch to BLAS inside nopython mode, so the win over the
numpy twins comes from removing per-step Python overhead and temporaries in
the integration loop, which dominates for the small matrices used here.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def expm_taylor(a, n_squarings, max_terms, term_tol):
    n = a.shape[0]
    scaled = a / (2.0 ** n_squarings)
    out = np.eye(n, dtype=np.complex128)
    term = np.eye(n, dtype=np.complex128)
    n_terms = -1
    for k in range(1, max_terms + 1):
        term = (term @ scaled) / k
        out = out + term
        m = 0.0
        for i in range(n):
            for j in range(n):
                v = abs(term[i, j])
                if v > m:
                    m = v
        if m <= term_tol:
            n_terms = k
            break
    if n_terms < 0:
        return out, -1
    for _ in range(n_squarings):
        out = out @ out
    return out, n_terms


@njit(cache=True)
def _master_rhs(h, jump, jump_dag, jdag_j, rate, rho):
    out = -1j * (h @ rho - rho @ h)
    if rate != 0.0:
        out = out + rate * (jump @ (rho @ jump_dag)
                            - 0.5 * (jdag_j @ rho + rho @ jdag_j))
    return out


@njit(cache=True)
def lindblad_rk4(h, jump, jump_dag, jdag_j, rate, rho0, n_steps, dt, last_dt):
    rho = rho0.copy()
    for step in range(n_steps + 1):
        step_dt = dt if step < n_steps else last_dt
        if step_dt > 0.0:
            k1 = _master_rhs(h, jump, jump_dag, jdag_j, rate, rho)
            k2 = _master_rhs(h, jump, jump_dag, jdag_j, rate, rho + (0.5 * step_dt) * k1)
            k3 = _master_rhs(h, jump, jump_dag, jdag_j, rate, rho + (0.5 * step_dt) * k2)
            k4 = _master_rhs(h, jump, jump_dag, jdag_j, rate, rho + step_dt * k3)
            rho = rho + (step_dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if step % 64 == 0:
            s = 0.0
            for i in range(rho.shape[0]):
                for j in range(rho.shape[1]):
                    s += abs(rho[i, j])
            if not np.isfinite(s):
                return rho, 0
    s = 0.0
    for i in range(rho.shape[0]):
        for j in range(rho.shape[1]):
            s += abs(rho[i, j])
    if not np.isfinite(s):
        return rho, 0
    return rho, 1
