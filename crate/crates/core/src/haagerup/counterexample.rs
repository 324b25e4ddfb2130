//! The matrix-unit function on `F_2` showing that no polynomially weighted
//! row/column bound controls `‖(λ ⊗ 1)(f)‖`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupModel, Letter};
use crate::spectral::{operator_norm_with, ComplexMatrix, NormOptions};

use super::function::SphereFunction;
use super::operators::assemble_m;

const A: Letter = Letter { generator: 0, exponent: 1 };
const A_INV: Letter = Letter { generator: 0, exponent: -1 };

/// Largest `k` for which the numeric check of `‖M_{k,k}(f)‖ = #T_k` runs.
pub const NUMERIC_CHECK_MAX_K: usize = 5;

fn free2() -> GroupModel {
    GroupModel::free(2).expect("rank 2")
}

/// `T_k`: reduced words of length `k` in `F_2 = ⟨a, b⟩` starting with `a`
/// and not ending with `a⁻¹`, in short-lex order.
pub fn counterexample_set(k: usize) -> Result<Vec<GroupElement>> {
    let g = free2();
    let sphere = g.enumerate_sphere(k)?;
    Ok(sphere
        .iter()
        .filter(|x| {
            let letters = g.letters(x);
            letters.first() == Some(&A) && letters.last() != Some(&A_INV)
        })
        .cloned()
        .collect())
}

/// `#T_k` from the last-letter recurrence. Saturates at `u128::MAX`.
pub fn count_t(k: usize) -> u128 {
    if k == 0 {
        return 0;
    }
    // words starting with a, split by last letter: a, a⁻¹, b^{±1}
    let (mut ends_a, mut ends_a_inv, mut ends_b) = (1u128, 0u128, 0u128);
    for _ in 1..k {
        let next_a = ends_a.saturating_add(ends_b);
        let next_a_inv = ends_a_inv.saturating_add(ends_b);
        let next_b = ends_a
            .saturating_add(ends_a_inv)
            .saturating_mul(2)
            .saturating_add(ends_b);
        (ends_a, ends_a_inv, ends_b) = (next_a, next_a_inv, next_b);
    }
    ends_a.saturating_add(ends_b)
}

/// `f ∈ E_{2k}(F_2) ⊗ M_t(C)` with `f(g_i g_j) = E_{i,j}` for `g_i, g_j ∈ T_k`.
pub fn build_counterexample(k: usize) -> Result<SphereFunction> {
    if k == 0 {
        return Err(Error::InvalidInput("the counterexample needs k ≥ 1".into()));
    }
    let g = free2();
    let t_set = counterexample_set(k)?;
    let t = t_set.len();
    g.check_cap(|| format!("counterexample support T_{k} x T_{k}"), (t as u128) * (t as u128))?;
    let mut f = SphereFunction::zero(g.clone(), 2 * k, t)?;
    let one = num_complex::Complex64::new(1.0, 0.0);
    for (i, gi) in t_set.iter().enumerate() {
        for (j, gj) in t_set.iter().enumerate() {
            // g_i does not end in a⁻¹ and g_j starts with a: no cancellation
            let x = g.mul(gi, gj);
            f.insert(x, ComplexMatrix::from_triplets(t, t, [(i, j, one)])?)?;
        }
    }
    Ok(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub k: usize,
    pub d_exponent: u32,
    pub t: u128,
    /// `‖M_{k,k}(f)‖ = t`, a lower bound for `‖(λ ⊗ 1)(f)‖`.
    pub lhs_lower: f64,
    /// `2 (1 + 2k)^d √t`.
    pub rhs: f64,
    pub ratio: f64,
    /// Numerically computed `‖M_{k,k}(f)‖`, for `k ≤ NUMERIC_CHECK_MAX_K`.
    pub numeric_norm: Option<f64>,
}

fn report_from_t(k: usize, d_exponent: u32, t: u128) -> CounterexampleReport {
    let tf = t as f64;
    let rhs = 2.0 * (1.0 + 2.0 * k as f64).powi(d_exponent as i32) * tf.sqrt();
    CounterexampleReport {
        k,
        d_exponent,
        t,
        lhs_lower: tf,
        rhs,
        ratio: tf / rhs,
        numeric_norm: None,
    }
}

/// Compares `‖M_{k,k}(f)‖ = #T_k` with the weighted row/column quantity
/// `2 (1 + 2k)^d √#T_k`. For small `k` the norm is also computed numerically
/// and must agree with `#T_k` to `1e-6` relative.
pub fn counterexample_report(k: usize, d_exponent: u32) -> Result<CounterexampleReport> {
    if k == 0 {
        return Err(Error::InvalidInput("the counterexample needs k ≥ 1".into()));
    }
    let t = counterexample_set(k)?.len() as u128;
    let mut report = report_from_t(k, d_exponent, t);
    if k <= NUMERIC_CHECK_MAX_K {
        let f = build_counterexample(k)?;
        let m = assemble_m(&f, k, k)?;
        let norm = operator_norm_with(&m.matrix, &NormOptions::with_tol(1e-10))?.value;
        if (norm - t as f64).abs() > 1e-6 * t as f64 {
            return Err(Error::InvalidInput(format!(
                "numeric ‖M_{{{k},{k}}}‖ = {norm} disagrees with #T_{k} = {t}"
            )));
        }
        report.numeric_norm = Some(norm);
    }
    Ok(report)
}

/// Report from the counting recurrence alone, for `k` too large to enumerate.
pub fn counterexample_report_counted(k: usize, d_exponent: u32) -> CounterexampleReport {
    report_from_t(k, d_exponent, count_t(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sets() {
        let t1 = counterexample_set(1).unwrap();
        assert_eq!(t1, vec![free2().generator(0).unwrap()]);
        assert_eq!(counterexample_set(2).unwrap().len(), 3);
        assert_eq!(counterexample_set(3).unwrap().len(), 7);
        assert_eq!(counterexample_set(4).unwrap().len(), 21);
    }

    #[test]
    fn recurrence_matches_enumeration() {
        for k in 1..=8 {
            assert_eq!(count_t(k), counterexample_set(k).unwrap().len() as u128, "k={k}");
        }
    }

    #[test]
    fn k1_is_a_single_matrix_unit() {
        let f = build_counterexample(1).unwrap();
        assert_eq!(f.dim(), 1);
        assert_eq!(f.k(), 2);
        let g = free2();
        let a2 = g.word(&[(0, 2)]).unwrap();
        assert_eq!(f.support().len(), 1);
        assert_eq!(f.coeff(&a2).unwrap().get(0, 0).re, 1.0);
    }

    #[test]
    fn report_k3() {
        let r = counterexample_report(3, 1).unwrap();
        assert_eq!(r.t, 7);
        assert!((r.rhs - 14.0 * 7f64.sqrt()).abs() < 1e-9);
        assert!((r.ratio - 7.0 / (14.0 * 7f64.sqrt())).abs() < 1e-12);
        assert!((r.numeric_norm.unwrap() - 7.0).abs() < 1e-6 * 7.0);
    }
}
