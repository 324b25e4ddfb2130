use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::matrix::ComplexMatrix;
use super::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormMethod {
    ExactSvd,
    PowerIteration,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormResult {
    pub value: f64,
    pub method: NormMethod,
    pub iterations: usize,
    /// Relative accuracy estimate; zero for the exact path.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormOptions {
    pub tol: f64,
    /// Matrices whose larger side is at most this go through the dense path.
    pub exact_threshold: usize,
    pub max_iterations: usize,
    /// Number of power-iteration starts; the largest estimate wins.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for NormOptions {
    fn default() -> Self {
        Self {
            tol: 1e-6,
            exact_threshold: 1500,
            max_iterations: 100_000,
            restarts: 2,
            seed: 0x0005_eed0_fa11,
        }
    }
}

impl NormOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

/// Largest singular value with default options and the given tolerance.
pub fn operator_norm(a: &ComplexMatrix, tol: f64) -> Result<NormResult> {
    operator_norm_with(a, &NormOptions::with_tol(tol))
}

pub fn operator_norm_with(a: &ComplexMatrix, opts: &NormOptions) -> Result<NormResult> {
    check_input(a, opts)?;
    if a.rows().max(a.cols()) <= opts.exact_threshold {
        exact_norm(a)
    } else {
        power_iteration_norm(a, opts)
    }
}

fn check_input(a: &ComplexMatrix, opts: &NormOptions) -> Result<()> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(Error::InvalidInput(format!(
            "operator norm of an empty {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    if !(opts.tol > 0.0 && opts.tol < 1.0) {
        return Err(Error::InvalidInput(format!("tolerance {} not in (0, 1)", opts.tol)));
    }
    Ok(())
}

/// Dense path: the top eigenvalue of the Hermitian Gram matrix on the
/// smaller side, `σ_max = sqrt(λ_max(A*A))`.
pub fn exact_norm(a: &ComplexMatrix) -> Result<NormResult> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(Error::InvalidInput("operator norm of an empty matrix".into()));
    }
    let value = if a.is_zero() {
        0.0
    } else {
        let gram = if a.cols() <= a.rows() {
            a.gram()
        } else {
            a.adjoint().gram()
        };
        let top = gram
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(0.0_f64, f64::max);
        top.max(0.0).sqrt()
    };
    Ok(NormResult {
        value,
        method: NormMethod::ExactSvd,
        iterations: 0,
        residual: 0.0,
    })
}

/// Power iteration on `A*A` from `opts.restarts` seeded random starts.
///
/// Each run stops once both the last Rayleigh-quotient change and the
/// geometric tail estimate `Δ ρ / (1 - ρ)` (with `ρ` the ratio of successive
/// changes) fall below `tol` relative to the current quotient. Rayleigh
/// quotients only increase along the iteration, so every value returned is a
/// lower bound for the true norm.
pub fn power_iteration_norm(a: &ComplexMatrix, opts: &NormOptions) -> Result<NormResult> {
    check_input(a, opts)?;
    if a.is_zero() {
        return Ok(NormResult {
            value: 0.0,
            method: NormMethod::PowerIteration,
            iterations: 0,
            residual: 0.0,
        });
    }
    let adj = a.adjoint();
    let mut best: Option<NormResult> = None;
    let mut best_lower = 0.0_f64;
    let mut total_iterations = 0;
    for restart in 0..opts.restarts.max(1) {
        let seed = rng::derive_seed(opts.seed, restart as u64);
        match single_run(a, &adj, opts, seed) {
            Ok((theta, iterations, residual)) => {
                total_iterations += iterations;
                let value = theta.sqrt();
                if best.is_none_or(|b| value > b.value) {
                    best = Some(NormResult {
                        value,
                        method: NormMethod::PowerIteration,
                        iterations: 0,
                        residual,
                    });
                }
            }
            Err(lower) => {
                total_iterations += opts.max_iterations;
                best_lower = best_lower.max(lower);
            }
        }
    }
    match best {
        Some(mut r) if r.value >= best_lower => {
            r.iterations = total_iterations;
            Ok(r)
        }
        _ => Err(Error::Convergence {
            iterations: total_iterations,
            best_lower_bound: best
                .map_or(best_lower, |b| b.value.max(best_lower)),
        }),
    }
}

fn normalize(v: &mut [Complex64]) -> f64 {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|z| *z /= n);
    }
    n
}

// Ok((rayleigh quotient of A*A, iterations, residual)) or Err(best sigma seen).
fn single_run(
    a: &ComplexMatrix,
    adj: &ComplexMatrix,
    opts: &NormOptions,
    seed: u64,
) -> std::result::Result<(f64, usize, f64), f64> {
    let mut g = rng::seeded(seed);
    let mut v: Vec<Complex64> = (0..a.cols()).map(|_| rng::complex_gaussian(&mut g)).collect();
    normalize(&mut v);
    let mut av = vec![Complex64::new(0.0, 0.0); a.rows()];
    let mut theta = 0.0_f64;
    let mut prev_change = f64::INFINITY;
    for it in 1..=opts.max_iterations {
        a.matvec(&v, &mut av);
        let next = av.iter().map(|z| z.norm_sqr()).sum::<f64>();
        adj.matvec(&av, &mut v);
        let grown = normalize(&mut v);
        if grown == 0.0 {
            // start vector in the kernel; A*A v = 0 exactly
            return Ok((next, it, 0.0));
        }
        let change = (next - theta).abs();
        theta = theta.max(next);
        if it > 1 && change == 0.0 {
            return Ok((theta, it, 0.0));
        }
        let rel = change / theta;
        let ratio = change / prev_change;
        let tail = if ratio < 1.0 { change * ratio / (1.0 - ratio) } else { f64::INFINITY };
        if it > 1 && rel < opts.tol && tail / theta < opts.tol {
            return Ok((theta, it, rel.max(tail / theta)));
        }
        prev_change = change;
    }
    Err(theta.sqrt())
}

/// Frobenius norm `(Σ |a_ij|²)^{1/2}`.
pub fn hs_norm(a: &ComplexMatrix) -> f64 {
    a.triplets().map(|(_, _, v)| v.norm_sqr()).sum::<f64>().sqrt()
}
