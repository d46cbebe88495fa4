"""Mann-Whitney U tests corrected for short-range dependence.

Thin wrapper over the C++ extension module; see the project README for the
full surface and the command-line companion.
"""

from ._mwdep import (  # noqa: F401
    __version__,
    adjacent_test,
    autocov_hat,
    bandwidth_advisor,
    compute_u,
    covariance_profile,
    empirical_cdf_strict,
    empirical_survival,
    estimate_pi,
    hoeffding_decompose,
    named_scenario_config,
    named_scenarios,
    normal_cdf,
    normal_quantile,
    one_sample_test,
    p_values,
    rng_algorithm,
    run_scenario,
    run_scenario_json,
    simulate,
    two_sample_test,
)

__all__ = [
    "adjacent_test",
    "autocov_hat",
    "bandwidth_advisor",
    "compute_u",
    "covariance_profile",
    "empirical_cdf_strict",
    "empirical_survival",
    "estimate_pi",
    "hoeffding_decompose",
    "named_scenario_config",
    "named_scenarios",
    "normal_cdf",
    "normal_quantile",
    "one_sample_test",
    "p_values",
    "rng_algorithm",
    "run_scenario",
    "run_scenario_json",
    "simulate",
    "two_sample_test",
]
