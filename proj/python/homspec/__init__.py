"""Spectra of zonal kernels on compact two-point homogeneous spaces."""

from ._homspec import (
    HomspecError,
    counting_lemmas,
    cumulative_dim,
    eigenspace_dim,
    family_spectrum,
    fit_decay,
    gauss_jacobi,
    jacobi_eval,
    laplace_eigenvalue,
    nystrom_check,
    space_parameters,
    verify_theorem,
    weyl_sweep,
)

__all__ = [
    "HomspecError",
    "counting_lemmas",
    "cumulative_dim",
    "eigenspace_dim",
    "family_spectrum",
    "fit_decay",
    "gauss_jacobi",
    "jacobi_eval",
    "laplace_eigenvalue",
    "nystrom_check",
    "space_parameters",
    "verify_theorem",
    "weyl_sweep",
]
