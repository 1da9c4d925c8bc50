"""Pure-numpy reference implementations of the hot kernels.

These mirror the numba kernels in ``_kernels_numba`` one-to-one and are the
fallback selected via the ``TFDSIM_BACKEND`` environment variable (see
``_backend``).  Both modules expose the same two functions:

* ``expm_taylor`` -- scaled Taylor series + repeated squaring for exp(A)
* ``lindblad_rk4`` -- fixed-step RK4 loop for the two-mode master equation
  with a single jump operator and a time-independent Hamiltonian
"""

import numpy as np


def expm_taylor(a, n_squarings, max_terms, term_tol):
    """Evaluate exp(a / 2**n_squarings) by Taylor series, then square back up.

    Returns ``(result, n_terms)`` where ``n_terms`` is -1 if the series did
    not converge within ``max_terms``.
    """
    n = a.shape[0]
    scaled = a / (2.0 ** n_squarings)
    out = np.eye(n, dtype=np.complex128)
    term = np.eye(n, dtype=np.complex128)
    n_terms = -1
    for k in range(1, max_terms + 1):
        term = (term @ scaled) / k
        out = out + term
        if np.abs(term).max() <= term_tol:
            n_terms = k
            break
    if n_terms < 0:
        return out, -1
    for _ in range(n_squarings):
        out = out @ out
    return out, n_terms


def _master_rhs(h, jump, jump_dag, jdag_j, rate, rho):
    out = -1j * (h @ rho - rho @ h)
    if rate != 0.0:
        out = out + rate * (jump @ rho @ jump_dag
                            - 0.5 * (jdag_j @ rho + rho @ jdag_j))
    return out


def lindblad_rk4(h, jump, jump_dag, jdag_j, rate, rho0, n_steps, dt, last_dt):
    """Classical RK4 for drho/dt = -i[h, rho] + rate*(J rho J+ - {J+J, rho}/2).

    Runs ``n_steps`` full steps of size ``dt`` followed by one step of size
    ``last_dt`` (skipped when zero).  Returns ``(rho, ok)`` with ``ok`` = 0
    if non-finite values appeared.
    """
    rho = rho0.copy()
    for step in range(n_steps + 1):
        step_dt = dt if step < n_steps else last_dt
        if step_dt > 0.0:
            k1 = _master_rhs(h, jump, jump_dag, jdag_j, rate, rho)
            k2 = _master_rhs(h, jump, jump_dag, jdag_j, rate, rho + (0.5 * step_dt) * k1)
            k3 = _master_rhs(h, jump, jump_dag, jdag_j, rate, rho + (0.5 * step_dt) * k2)
            k4 = _master_rhs(h, jump, jump_dag, jdag_j, rate, rho + step_dt * k3)
            rho = rho + (step_dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if step % 64 == 0 and not np.isfinite(np.abs(rho).sum()):
            return rho, 0
    if not np.isfinite(np.abs(rho).sum()):
        return rho, 0
    return rho, 1
