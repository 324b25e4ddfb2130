use std::io::{self, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupModel, HyperbolicityEstimate};
use crate::haagerup::{
    block_operator, bound_buchholz, bound_haagerup_scalar, bound_lemma_block, bound_main_theorem,
    bound_rapid_decay, bound_remark3, bound_row_column, counterexample_report,
    counterexample_report_counted, proof_trace_check, truncated_lambda, CounterexampleReport,
    ProofTrace, SphereFunction,
};
use crate::spectral::{operator_norm_with, rng, ComplexMatrix, NormOptions};
use crate::VERSION;

use super::config::{ResolvedDelta, VerifyConfig};
use super::report::{Inequality, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_RESOURCE_LIMIT: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

/// Exit code for an error escaping a run.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::ResourceLimit { .. } => EXIT_RESOURCE_LIMIT,
        Error::Usage(_) | Error::InvalidGroup(_) | Error::Parse(_) => EXIT_USAGE,
        _ => 1,
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub reports: Vec<VerificationReport>,
    pub exit_code: i32,
}

/// Seed of trial `trial` at sphere radius `k`.
pub fn trial_seed(seed: u64, k: usize, trial: usize) -> u64 {
    rng::derive_seed(seed, ((k as u64) << 32) | trial as u64)
}

/// Above this size the truncated left-hand side goes through power iteration
/// even when the exact path would accept it. The LHS only needs a lower bound,
/// and a dense decomposition of a ~1500-row Gram matrix costs seconds.
pub const LHS_EXACT_THRESHOLD: usize = 600;

/// Lower-bound-safe norm: a non-converged power iteration still yields a
/// valid lower bound, which is what the left-hand sides need.
fn lhs_norm(m: &ComplexMatrix, opts: &NormOptions) -> Result<f64> {
    if m.is_zero() {
        return Ok(0.0);
    }
    match operator_norm_with(m, opts) {
        Ok(r) => Ok(r.value),
        Err(Error::Convergence { best_lower_bound, .. }) => Ok(best_lower_bound),
        Err(e) => Err(e),
    }
}

struct TrialContext<'a> {
    cfg: &'a VerifyConfig,
    k: usize,
    trial: usize,
    seed: u64,
    delta: Option<ResolvedDelta>,
    norm: NormOptions,
}

impl TrialContext<'_> {
    fn report(
        &self,
        inequality: Inequality,
        lhs: f64,
        rhs: f64,
        radius: Option<usize>,
        started: Instant,
    ) -> VerificationReport {
        let rhs = rhs * self.cfg.rhs_scale;
        let (delta, delta_unverified) = match (inequality.uses_delta(), self.delta) {
            (true, Some(d)) => (Some(d.value), d.unverified),
            _ => (None, false),
        };
        VerificationReport {
            inequality,
            variant: None,
            group: self.cfg.group.to_string(),
            k: self.k,
            d: self.cfg.d,
            radius,
            delta,
            delta_unverified,
            m: None,
            n: None,
            seed: self.seed,
            trial: self.trial,
            lhs,
            rhs,
            ratio: if rhs > 0.0 { lhs / rhs } else if lhs > 0.0 { f64::INFINITY } else { 0.0 },
            pass: VerificationReport::passes(lhs, rhs),
            timing_ms: started.elapsed().as_secs_f64() * 1e3,
            version: VERSION.to_string(),
        }
    }
}

fn run_trial(ctx: &TrialContext<'_>) -> Result<Vec<VerificationReport>> {
    let cfg = ctx.cfg;
    let k = ctx.k;
    let f = SphereFunction::random(cfg.group.clone(), k, cfg.d, cfg.density, ctx.seed)?;
    let radius = cfg.radius_for(k);
    let needs_truncation = cfg.inequalities.iter().any(|i| {
        matches!(
            i,
            Inequality::Haagerup | Inequality::Buchholz | Inequality::Main | Inequality::Remark3 | Inequality::Rd
        )
    });
    let truncated = if needs_truncation {
        let started = Instant::now();
        let t = truncated_lambda(&f, radius)?;
        let opts = NormOptions {
            exact_threshold: ctx.norm.exact_threshold.min(LHS_EXACT_THRESHOLD),
            ..ctx.norm
        };
        Some((lhs_norm(&t.matrix, &opts)?, started))
    } else {
        None
    };
    let lhs = || truncated.map(|(v, _)| v).expect("truncated norm computed");
    let rhs_opts = NormOptions {
        tol: ctx.norm.tol.min(1e-8),
        ..ctx.norm
    };
    let delta = || ctx.delta.map(|d| d.value).expect("delta resolved for this inequality");

    let mut out = Vec::new();
    for &ineq in &cfg.inequalities {
        let started = truncated.map_or_else(Instant::now, |(_, t)| t);
        match ineq {
            Inequality::Haagerup => {
                out.push(ctx.report(ineq, lhs(), bound_haagerup_scalar(&f)?, Some(radius), started));
            }
            Inequality::Rd => {
                let rhs = bound_rapid_decay(f.group(), &f.scalar_values()?);
                out.push(ctx.report(ineq, lhs(), rhs, Some(radius), started));
            }
            Inequality::Buchholz => {
                let b = bound_buchholz(&f, &rhs_opts)?;
                out.push(ctx.report(ineq, lhs(), b.value, Some(radius), started));
                if k == 1 {
                    let mut r = ctx.report(ineq, lhs(), bound_row_column(&f)?, Some(radius), started);
                    r.variant = Some("row-column".into());
                    out.push(r);
                }
            }
            Inequality::Main => {
                let b = bound_main_theorem(&f, delta(), &rhs_opts)?;
                out.push(ctx.report(ineq, lhs(), b.value, Some(radius), started));
            }
            Inequality::Remark3 => {
                let b = bound_remark3(&f, delta(), &rhs_opts)?;
                out.push(ctx.report(ineq, lhs(), b.value, Some(radius), started));
            }
            Inequality::LemmaBlock => {
                let m_max = cfg.m_max_for(k);
                for m in 0..=m_max {
                    for n in 0..=m_max {
                        if m.abs_diff(n) > k {
                            continue;
                        }
                        let started = Instant::now();
                        let block = block_operator(&f, m, n)?;
                        let lhs = lhs_norm(&block.matrix, &rhs_opts)?;
                        let rhs = bound_lemma_block(&f, m, n, delta(), &rhs_opts)?.value;
                        let mut r = ctx.report(ineq, lhs, rhs, None, started);
                        r.m = Some(m);
                        r.n = Some(n);
                        out.push(r);
                    }
                }
            }
            Inequality::Counterexample => {
                // deterministic in k; emitted once, on the first trial
                if ctx.trial == 0 && k >= 1 {
                    let started = Instant::now();
                    let c = counterexample_report(k, cfg.d_exponent)?;
                    let lhs = c.numeric_norm.unwrap_or(c.lhs_lower);
                    let mut r = ctx.report(ineq, lhs, c.rhs, None, started);
                    r.d = c.t as usize;
                    r.k = 2 * k;
                    r.variant = Some(format!("T_{k}"));
                    out.push(r);
                }
            }
        }
    }
    Ok(out)
}

/// Runs every configured trial. Trials run in parallel; reports come back in
/// `(k, trial, inequality order)` order regardless of scheduling.
pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyOutcome> {
    let needs_delta = cfg.inequalities.iter().any(|i| i.uses_delta());
    let delta = match (needs_delta, cfg.delta) {
        (false, _) => None,
        (true, Some(src)) => Some(src.resolve(&cfg.group)?),
        (true, None) if cfg.group.is_free() => Some(ResolvedDelta {
            value: 0,
            unverified: false,
        }),
        (true, None) => {
            return Err(Error::Usage(format!("{} needs an explicit --delta", cfg.group)));
        }
    };
    let norm = NormOptions::with_tol(cfg.tol);
    let jobs: Vec<(usize, usize)> = cfg
        .ks
        .iter()
        .flat_map(|&k| (0..cfg.trials).map(move |t| (k, t)))
        .collect();
    let per_trial: Vec<Result<Vec<VerificationReport>>> = jobs
        .par_iter()
        .map(|&(k, trial)| {
            run_trial(&TrialContext {
                cfg,
                k,
                trial,
                seed: trial_seed(cfg.seed, k, trial),
                delta,
                norm,
            })
        })
        .collect();
    let mut reports = Vec::new();
    for r in per_trial {
        reports.extend(r?);
    }
    let exit_code = if reports.iter().any(VerificationReport::is_violation) {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    };
    Ok(VerifyOutcome { reports, exit_code })
}

/// `δ(R')` for `R' = 1..=R`, showing where the estimate stabilises.
pub fn run_delta(group: &GroupModel, radius: usize) -> Result<Vec<HyperbolicityEstimate>> {
    (1..=radius.max(1)).map(|r| group.estimate_delta(r)).collect()
}

pub fn write_delta_table(
    out: &mut dyn Write,
    group: &GroupModel,
    estimates: &[HyperbolicityEstimate],
) -> io::Result<()> {
    writeln!(out, "group {group}")?;
    writeln!(out, "{:>3} {:>8} {:>14} {:>6}  exhaustive", "R", "#B_R", "tuples", "delta")?;
    for e in estimates {
        writeln!(
            out,
            "{:>3} {:>8} {:>14} {:>6}  {}",
            e.radius, e.ball_size, e.tuples_checked, e.delta, e.is_exhaustive
        )?;
    }
    Ok(())
}

/// Largest `k` whose `T_k` is enumerated; beyond it the recurrence is used.
pub const COUNTEREXAMPLE_ENUMERATION_MAX_K: usize = 10;

#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleTable {
    pub rows: Vec<CounterexampleReport>,
    /// First `k` whose ratio exceeds 1.
    pub first_exceeding: Option<usize>,
}

pub fn run_counterexample(k_max: usize, d_exponent: u32) -> Result<CounterexampleTable> {
    let rows = (1..=k_max)
        .map(|k| {
            if k <= COUNTEREXAMPLE_ENUMERATION_MAX_K {
                counterexample_report(k, d_exponent)
            } else {
                Ok(counterexample_report_counted(k, d_exponent))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let first_exceeding = rows.iter().find(|r| r.ratio > 1.0).map(|r| r.k);
    Ok(CounterexampleTable { rows, first_exceeding })
}

pub fn write_counterexample_table(out: &mut dyn Write, table: &CounterexampleTable) -> io::Result<()> {
    writeln!(
        out,
        "{:>3} {:>14} {:>16} {:>16} {:>12}  source",
        "k", "t_k", "lhs", "rhs", "ratio"
    )?;
    for r in &table.rows {
        let source = match (r.numeric_norm, r.k <= COUNTEREXAMPLE_ENUMERATION_MAX_K) {
            (Some(_), _) => "enumerated+norm",
            (None, true) => "enumerated",
            (None, false) => "recurrence",
        };
        let flag = if table.first_exceeding == Some(r.k) { "  <- first ratio > 1" } else { "" };
        writeln!(
            out,
            "{:>3} {:>14} {:>16.4} {:>16.4} {:>12.6}  {source}{flag}",
            r.k, r.t, r.numeric_norm.unwrap_or(r.lhs_lower), r.rhs, r.ratio
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct SphereRow {
    pub k: usize,
    pub size: u128,
    pub elements: Option<Vec<String>>,
}

/// `#S_k` for `k = 0..=R`, with the elements when `list` is set.
pub fn run_spheres(group: &GroupModel, radius: usize, list: bool) -> Result<Vec<SphereRow>> {
    (0..=radius)
        .map(|k| {
            let elements = if list {
                Some(group.enumerate_sphere(k)?.iter().map(ToString::to_string).collect())
            } else {
                None
            };
            Ok(SphereRow {
                k,
                size: group.sphere_size(k),
                elements,
            })
        })
        .collect()
}

/// Proof-trace check of a seeded random function on `S_k`.
pub fn run_trace(
    group: &GroupModel,
    k: usize,
    m: usize,
    n: usize,
    d: usize,
    delta: ResolvedDelta,
    seed: u64,
) -> Result<ProofTrace> {
    let f = SphereFunction::random(group.clone(), k, d, 1.0, seed)?;
    proof_trace_check(&f, m, n, delta.value)
}
