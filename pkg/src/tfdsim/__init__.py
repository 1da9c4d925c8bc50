"""tfdsim: two-mode dissipative quantum optics via doubled-space vectorization.

Layers, bottom up:

* ``numerics``     dense complex linear algebra (kron, expm, RK4, eigh)
* ``fock``         truncated Fock spaces, states, partial trace/transpose
* ``lindblad``     the physical model and the brute-force master-equation oracle
* ``tfd``          doubled-space vectorization and the Liouvillian generator
* ``hartree_fock`` mean-field linearization and short-time squeeze dynamics
* ``su11``         su(1,1) generators and the normal-ordering factorization
* ``gaussian``     covariance matrices, symplectic eigenvalues, E_N and I_M
* ``cli``          scenario sweeps, oracle validation, CSV/JSON output

Hot kernels run through numba when available; set ``TFDSIM_BACKEND=numpy``
to force the pure-numpy fallback (see ``tfdsim._backend``).
"""

__version__ = "0.1.0"

from ._backend import active_backend  # noqa: F401
