use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupModel};
use crate::spectral::{operator_norm_with, ComplexMatrix, NormOptions};

use super::function::SphereFunction;
use super::operators::assemble_m;

/// One `‖M_{row,col}(·)‖` summand of a block bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockTerm {
    pub row: usize,
    pub col: usize,
    pub norm: f64,
}

/// A right-hand side built from block norms: `value = factor · Σ terms`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockBound {
    pub value: f64,
    pub factor: f64,
    pub terms: Vec<BlockTerm>,
}

impl BlockBound {
    fn new(factor: f64, terms: Vec<BlockTerm>) -> Self {
        let sum: f64 = terms.iter().map(|t| t.norm).sum();
        Self {
            value: factor * sum,
            factor,
            terms,
        }
    }
}

fn block_norm(f: &SphereFunction, i: usize, j: usize, opts: &NormOptions) -> Result<BlockTerm> {
    let m = assemble_m(f, i, j)?;
    let norm = if m.matrix.is_zero() {
        0.0
    } else {
        operator_norm_with(&m.matrix, opts)?.value
    };
    Ok(BlockTerm { row: i, col: j, norm })
}

fn ball_count(g: &GroupModel, s: usize) -> f64 {
    g.ball_size(s) as f64
}

/// `(k + 1) ‖f‖₂` for scalar `f` supported on `S_k`.
pub fn bound_haagerup_scalar(f: &SphereFunction) -> Result<f64> {
    if !f.is_scalar() {
        return Err(Error::InvalidInput(format!(
            "the scalar Haagerup bound needs d = 1, found d = {}",
            f.dim()
        )));
    }
    Ok((f.k() as f64 + 1.0) * f.l2_norm())
}

/// `2 (Σ_x |f(x)|² (1 + ℓ(x))⁴)^{1/2}` for any finitely supported scalar `f`.
pub fn bound_rapid_decay(group: &GroupModel, f: &BTreeMap<GroupElement, Complex64>) -> f64 {
    let sum: f64 = f
        .iter()
        .map(|(x, v)| v.norm_sqr() * (1.0 + group.length(x) as f64).powi(4))
        .sum();
    2.0 * sum.sqrt()
}

/// `Σ_{j=0}^{k} ‖M_{j,k−j}(f)‖`, asserted for free groups only.
pub fn bound_buchholz(f: &SphereFunction, opts: &NormOptions) -> Result<BlockBound> {
    if !f.group().is_free() {
        return Err(Error::UnsupportedBound {
            bound: "the sum of M_{j,k-j} norms",
            group: f.group().to_string(),
        });
    }
    let k = f.k();
    let terms = (0..=k)
        .map(|j| block_norm(f, j, k - j, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockBound::new(1.0, terms))
}

/// `2 max{‖Σ f(x)*f(x)‖^{1/2}, ‖Σ f(x)f(x)*‖^{1/2}}` for `f` on `S_1`.
pub fn bound_row_column(f: &SphereFunction) -> Result<f64> {
    if f.k() != 1 {
        return Err(Error::InvalidInput(format!(
            "the row/column bound is for k = 1, found k = {}",
            f.k()
        )));
    }
    let d = f.dim();
    let mut col = DMatrix::<Complex64>::zeros(d, d);
    let mut row = DMatrix::<Complex64>::zeros(d, d);
    for c in f.support().values() {
        let m = c.to_nalgebra();
        col += m.adjoint() * &m;
        row += &m * m.adjoint();
    }
    let top = |h: DMatrix<Complex64>| h.symmetric_eigenvalues().iter().copied().fold(0.0_f64, f64::max).max(0.0);
    Ok(2.0 * top(col).sqrt().max(top(row).sqrt()))
}

/// `2 · #B_{1+2δ} · Σ_{k ≤ i+j ≤ k+δ} ‖M_{j,i}(f)‖`, skipping pairs with
/// `|i − j| > k`, whose blocks vanish.
pub fn bound_main_theorem(f: &SphereFunction, delta: u32, opts: &NormOptions) -> Result<BlockBound> {
    let k = f.k();
    let delta = delta as usize;
    let mut terms = Vec::new();
    for total in k..=k + delta {
        for i in 0..=total {
            let j = total - i;
            if i.abs_diff(j) > k {
                continue;
            }
            terms.push(block_norm(f, j, i, opts)?);
        }
    }
    Ok(BlockBound::new(2.0 * ball_count(f.group(), 1 + 2 * delta), terms))
}

/// `#B_{1+2δ} · Σ_{s=0}^{δ} ‖M_{k−⌈p/2⌉, ⌈p/2⌉+s}(f)‖` with `p = n + k − m`.
pub fn bound_lemma_block(
    f: &SphereFunction,
    m: usize,
    n: usize,
    delta: u32,
    opts: &NormOptions,
) -> Result<BlockBound> {
    let k = f.k();
    if m.abs_diff(n) > k {
        return Err(Error::InvalidInput(format!(
            "|m - n| = {} exceeds k = {k}; the block is zero",
            m.abs_diff(n)
        )));
    }
    let p = n + k - m;
    let half_up = p.div_ceil(2);
    let terms = (0..=delta as usize)
        .map(|s| block_norm(f, k - half_up, half_up + s, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockBound::new(ball_count(f.group(), 1 + 2 * delta as usize), terms))
}

/// `f̃_{i,j}(y) = f(y) / d_{i,j}(y)`, zero where `d_{i,j}(y) = 0`.
pub fn divided_function(f: &SphereFunction, i: usize, j: usize) -> Result<SphereFunction> {
    let g = f.group();
    let ys: Vec<GroupElement> = f.support().keys().cloned().collect();
    let counts = g.decomposition_multiplicities(&ys, i, j)?;
    let divisor: BTreeMap<&GroupElement, u64> = ys.iter().zip(counts).collect();
    Ok(f.map_coefficients(|y, c| match divisor[y] {
        0 => ComplexMatrix::zeros(c.rows(), c.cols()),
        d => c.scale(Complex64::new(1.0 / d as f64, 0.0)),
    }))
}

/// `2 · #B_{1+2δ} · Σ_{i+j=k} ‖M_{i,j}(f̃_{i,j})‖`. This bound is stated
/// without proof in the source, so callers record rather than assert it.
pub fn bound_remark3(f: &SphereFunction, delta: u32, opts: &NormOptions) -> Result<BlockBound> {
    let k = f.k();
    let terms = (0..=k)
        .map(|i| {
            let divided = divided_function(f, i, k - i)?;
            block_norm(&divided, i, k - i, opts)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockBound::new(
        2.0 * ball_count(f.group(), 1 + 2 * delta as usize),
        terms,
    ))
}
