"""Closed-form power allocation for two-cell cooperative NOMA."""

from ._core import (  # noqa: F401
    AllocationResult,
    Branch,
    ChannelPair,
    ComparisonReport,
    Geometry,
    GridSpec,
    ScenarioParams,
    SchemeId,
    SchemeOutcome,
    SolverTrace,
    dbm_to_watts,
    empirical_crossover,
    noise_power,
    oracle_s2,
    oracle_s3,
    oracle_s4,
    rank_schemes,
    rate_from_sinr,
    s4_vs_s3_threshold,
    scenario_from_geometry,
    solve_scheme1,
    solve_scheme2,
    solve_scheme3,
    solve_scheme4,
    watts_to_dbm,
)

__version__ = "0.1.0"
