//! Sphere-supported operator-valued functions, the block matrices built from
//! them, and every right-hand side compared against `‖(λ ⊗ 1)(f)‖`.

mod bounds;
mod counterexample;
mod function;
mod operators;
mod trace;

pub use bounds::{
    bound_buchholz, bound_haagerup_scalar, bound_lemma_block, bound_main_theorem,
    bound_rapid_decay, bound_remark3, bound_row_column, divided_function, BlockBound, BlockTerm,
};
pub use counterexample::{
    build_counterexample, count_t, counterexample_report, counterexample_report_counted,
    counterexample_set, CounterexampleReport, NUMERIC_CHECK_MAX_K,
};
pub use function::SphereFunction;
pub use operators::{assemble_m, block_operator, truncated_lambda, BlockKind, BlockOperator, TruncatedOperator};
pub use trace::{
    proof_trace_check, Diagnosis, ProofTrace, TraceCheck, TraceRecord, TraceViolation, ZCount,
};
