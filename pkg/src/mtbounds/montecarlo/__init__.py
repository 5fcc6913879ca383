"""Reproducible simulation of martingale difference sequences and empirical checks of the bounds."""
from .experiments import (SIM_TAGS, SimulationConfig, SimulationReport, TrialStatistics, audit_declarations,
                          audit_supermartingale, declared_params, empirical_bernstein_experiment,
                          empirical_ci_components, mcdiarmid_experiment, mcdiarmid_table,
                          rank_one_rademacher_spec, report_from_statistics, run_experiment, simulate,
                          soundness_specs, wilson_interval)
from .generators import KINDS, Declarations, MartingaleSpec, generate_sequence
from .prng import LaneBank, ScalarStream, Xoshiro256, mix64, prng_stream, stream_state

__all__ = [
    "KINDS", "SIM_TAGS", "Declarations", "LaneBank", "MartingaleSpec", "ScalarStream", "SimulationConfig",
    "SimulationReport", "TrialStatistics", "Xoshiro256", "audit_declarations", "audit_supermartingale",
    "declared_params", "empirical_bernstein_experiment", "empirical_ci_components", "generate_sequence",
    "mcdiarmid_experiment", "mcdiarmid_table", "mix64", "prng_stream", "rank_one_rademacher_spec",
    "report_from_statistics", "run_experiment", "simulate", "soundness_specs", "stream_state",
    "wilson_interval",
]
