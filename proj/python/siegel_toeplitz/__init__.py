"""Heisenberg-invariant Toeplitz operators on the Siegel domain."""

from ._core import (
    ConvergenceError,
    DomainError,
    InvariantError,
    SiegelPoint,
    UnsupportedError,
    act,
    bergman_kernel,
    gamma,
    gamma_hat,
    gamma_table,
    height,
    hn_inv,
    hn_mul,
    kappa,
    log_grid,
    moment_identity_residual,
    moment_map,
    moment_map_projected,
    tau,
    toeplitz_multiplier,
    verify,
)

__version__ = "0.1.0"
