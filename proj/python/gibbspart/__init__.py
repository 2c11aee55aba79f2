"""Extreme block sizes in Gibbs-type exchangeable random partitions.

Exact distributions (block counts, largest/smallest block laws, conditional
laws, factorial moments), asymptotic approximations, partition samplers,
special-number tables, incomplete Dirichlet integrals, and self-verification
suites.  All numerical work happens in the compiled extension; this package
just re-exports it.
"""

from ._core import (  # noqa: F401
    # errors
    Error,
    ParamError,
    ShapeError,
    RangeError,
    PoleError,
    EmptyDomainError,
    ModelError,
    ToleranceError,
    NonConvergenceError,
    ConvergenceError,
    NormalizationError,
    # models
    Model,
    # exact distributions
    blocks_pmf,
    blocks_pmf_exact,
    extreme_cdf,
    extreme_cdf_exact,
    smallest_tail,
    smallest_tail_exact,
    conditional_extreme,
    conditional_ith_largest,
    factorial_moment,
    # sampling
    sample_block_sizes,
    count_no_singletons,
    # asymptotics
    AsymptoticForm,
    sibuya_pmf,
    smallest_tail_asymp,
    buchstab_omega,
    smallest_large_dev,
    consistent_smallest_cond,
    dickman_rho,
    rho_tilde,
    rho_r_root,
    largest_small_dev,
    moment_limit_smallest,
    moment_limit_largest,
    gnedin_smallest_tail_asymp,
    gnedin_smallest_moment_asymp,
    gnedin_largest_cdf_asymp,
    gnedin_largest_moment_asymp,
    # special numbers and tables
    special_number,
    special_number_exact,
    bell_value,
    # Dirichlet integrals
    incomplete_dirichlet,
    dirichlet_mc,
    # enumeration oracle
    partition_count,
    enum_probability,
    # verification
    verify_core,
    verify_quadrature,
    verify_simulation_cell,
)

__version__ = "1.0.0"
