//! Seeded verification campaigns, their reports, and the drivers behind the
//! `hypnorm` subcommands.

mod campaign;
mod config;
mod report;

pub use campaign::{
    exit_code_for, run_counterexample, run_delta, run_spheres, run_trace, run_verify, trial_seed,
    write_counterexample_table, write_delta_table, CounterexampleTable, SphereRow, VerifyOutcome,
    COUNTEREXAMPLE_ENUMERATION_MAX_K, EXIT_OK, LHS_EXACT_THRESHOLD, EXIT_RESOURCE_LIMIT, EXIT_USAGE, EXIT_VIOLATION,
};
pub use config::{parse_k_range, DeltaSource, PartialVerifyConfig, ResolvedDelta, VerifyConfig, CAP_ENV};
pub use report::{write_jsonl, write_table, Inequality, VerificationReport, PASS_SLACK};
