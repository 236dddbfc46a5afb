"""Haar-measure moment functions, ensemble averages and open-system dynamics."""

from ._core import (
    DimensionError,
    DomainError,
    Error,
    InvalidState,
    NegativeVariance,
    QuadratureError,
    SingularDimension,
    SingularWeingarten,
    averaged_time_coeffs,
    bessel_j1,
    depolarizing_average,
    empirical_moment,
    empirical_reduced_norm,
    f_of_t,
    form_factor_f2,
    fourth_moment_closed,
    general_average,
    gibbs_purity,
    gibbs_purity_mc,
    moment_function,
    open_thermalization_large_env,
    partial_trace_env,
    partial_trace_sys,
    purity_evolution,
    sample_haar_unitary,
    sample_spectrum,
    uniform_average,
    uniform_purity,
    uniform_variance,
    weingarten,
)

__version__ = "0.1.0"
