use num_complex::Complex64;

use crate::error::Result;
use crate::group::{BallIndex, GroupElement, GroupModel, SphereIndex};
use crate::spectral::ComplexMatrix;

use super::function::SphereFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    /// `M_{i,j}(f) = (f(y₁y₂⁻¹))_{y₁ ∈ S_i, y₂ ∈ S_j}`.
    Mij,
    /// `(P_m ⊗ 1)(λ ⊗ 1)(f)(P_n ⊗ 1)` restricted to `ℓ²(S_m) ⊗ H ← ℓ²(S_n) ⊗ H`.
    PmLambdaPn,
}

/// A sphere-to-sphere block of `(λ ⊗ 1)(f)`.
///
/// Row `r·d + a` corresponds to the `a`-th coordinate of the `r`-th element of
/// the row sphere; columns likewise.
#[derive(Debug, Clone)]
pub struct BlockOperator {
    pub kind: BlockKind,
    pub row_sphere: SphereIndex,
    pub col_sphere: SphereIndex,
    pub dim: usize,
    pub matrix: ComplexMatrix,
}

/// `(λ ⊗ 1)(f)` compressed to `ℓ²(B_R) ⊗ C^d`.
#[derive(Debug, Clone)]
pub struct TruncatedOperator {
    pub group: GroupModel,
    pub radius: usize,
    pub dim: usize,
    pub ball: BallIndex,
    pub matrix: ComplexMatrix,
}

impl TruncatedOperator {
    /// The `(S_m, S_n)` block, in the same layout as [`block_operator`].
    pub fn sphere_block(&self, m: usize, n: usize) -> ComplexMatrix {
        let expand = |r: std::ops::Range<usize>| -> Vec<usize> {
            r.flat_map(|i| (0..self.dim).map(move |a| i * self.dim + a))
                .collect()
        };
        self.matrix
            .select(&expand(self.ball.sphere_range(m)), &expand(self.ball.sphere_range(n)))
    }
}

// Places f(y) at block (row, col) whenever y·col = row, i.e. the entry rule
// (row, col) ↦ f(row · col⁻¹).
fn place_blocks<'a>(
    f: &SphereFunction,
    rows: impl Iterator<Item = (usize, &'a GroupElement)>,
    col_lookup: impl Fn(&GroupElement) -> Option<usize>,
    shape: (usize, usize),
) -> ComplexMatrix {
    let g = f.group();
    let d = f.dim();
    let support: Vec<(GroupElement, &ComplexMatrix)> = f
        .support()
        .iter()
        .map(|(y, c)| (g.inverse(y), c))
        .collect();
    let mut triplets: Vec<(usize, usize, Complex64)> = Vec::new();
    for (r, x) in rows {
        for (y_inv, coeff) in &support {
            let z = g.mul(y_inv, x);
            if let Some(c) = col_lookup(&z) {
                triplets.extend(
                    coeff
                        .triplets()
                        .map(|(a, b, v)| (r * d + a, c * d + b, v)),
                );
            }
        }
    }
    ComplexMatrix::from_triplets(shape.0, shape.1, triplets).expect("blocks lie inside the matrix")
}

fn sphere_block(f: &SphereFunction, i: usize, j: usize, kind: BlockKind) -> Result<BlockOperator> {
    let g = f.group();
    let rows = g.enumerate_sphere(i)?;
    let cols = g.enumerate_sphere(j)?;
    let d = f.dim();
    let shape = (rows.len() * d, cols.len() * d);
    let k = f.k();
    // ℓ(y₁y₂⁻¹) = k needs |i − j| ≤ k ≤ i + j
    let matrix = if i.abs_diff(j) > k || i + j < k {
        ComplexMatrix::zeros(shape.0, shape.1)
    } else {
        place_blocks(f, rows.iter().enumerate(), |z| cols.index_of(z), shape)
    };
    Ok(BlockOperator {
        kind,
        row_sphere: rows,
        col_sphere: cols,
        dim: d,
        matrix,
    })
}

/// `M_{i,j}(f)`, of size `(#S_i · d) × (#S_j · d)`.
pub fn assemble_m(f: &SphereFunction, i: usize, j: usize) -> Result<BlockOperator> {
    sphere_block(f, i, j, BlockKind::Mij)
}

/// The exact block `P_m λ(f) P_n`; zero whenever `|m − n| > k`.
pub fn block_operator(f: &SphereFunction, m: usize, n: usize) -> Result<BlockOperator> {
    sphere_block(f, m, n, BlockKind::PmLambdaPn)
}

/// `(λ ⊗ 1)(f)` compressed to the ball `B_R`: block `(x, z)` is `f(x z⁻¹)`.
/// Its norm is a lower bound for `‖(λ ⊗ 1)(f)‖` and grows with `R`.
pub fn truncated_lambda(f: &SphereFunction, radius: usize) -> Result<TruncatedOperator> {
    let g = f.group();
    let ball = g.enumerate_ball(radius)?;
    let n = ball.len() * f.dim();
    let matrix = place_blocks(
        f,
        ball.elements().iter().enumerate(),
        |z| ball.index_of(z),
        (n, n),
    );
    Ok(TruncatedOperator {
        group: g.clone(),
        radius,
        dim: f.dim(),
        ball,
        matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{hs_norm, operator_norm};

    fn free(r: u32) -> GroupModel {
        GroupModel::free(r).unwrap()
    }

    #[test]
    fn delta_a_column_and_row() {
        let g = free(2);
        let a = g.generator(0).unwrap();
        let f = SphereFunction::delta(g.clone(), a.clone()).unwrap();

        let col = assemble_m(&f, 1, 0).unwrap();
        assert_eq!(col.matrix.shape(), (4, 1));
        assert_eq!(col.matrix.nnz(), 1);
        let row_a = col.row_sphere.index_of(&a).unwrap();
        assert_eq!(col.matrix.get(row_a, 0), Complex64::new(1.0, 0.0));
        assert!((operator_norm(&col.matrix, 1e-8).unwrap().value - 1.0).abs() < 1e-12);

        let row = assemble_m(&f, 0, 1).unwrap();
        assert_eq!(row.matrix.shape(), (1, 4));
        let col_a_inv = row.col_sphere.index_of(&g.inverse(&a)).unwrap();
        assert_eq!(row.matrix.get(0, col_a_inv), Complex64::new(1.0, 0.0));
        assert_eq!(row.matrix.nnz(), 1);
    }

    #[test]
    fn far_apart_spheres_give_zero_blocks() {
        let g = free(2);
        let f = SphereFunction::random(g, 2, 1, 1.0, 3).unwrap();
        let b = block_operator(&f, 5, 1).unwrap();
        assert!(b.matrix.is_zero());
        assert_eq!(b.matrix.shape(), (324, 4));
        assert_eq!(b.kind, BlockKind::PmLambdaPn);
    }

    #[test]
    fn column_block_norm_is_l2_norm() {
        let g = free(2);
        let f = SphereFunction::random(g, 2, 1, 1.0, 8).unwrap();
        let col = block_operator(&f, 2, 0).unwrap();
        let n = operator_norm(&col.matrix, 1e-8).unwrap().value;
        assert!((n - f.l2_norm()).abs() < 1e-10);
        assert!((hs_norm(&col.matrix) - f.l2_norm()).abs() < 1e-12);
    }

    #[test]
    fn delta_a_on_z_is_a_partial_isometry() {
        let g = free(1);
        let f = SphereFunction::delta(g.clone(), g.generator(0).unwrap()).unwrap();
        let t = truncated_lambda(&f, 2).unwrap();
        assert_eq!(t.matrix.shape(), (5, 5));
        for i in 0..5 {
            assert!(t.matrix.row(i).0.len() <= 1);
        }
        let adj = t.matrix.adjoint();
        for i in 0..5 {
            assert!(adj.row(i).0.len() <= 1);
        }
        assert!(t.matrix.triplets().all(|(_, _, v)| v == Complex64::new(1.0, 0.0)));
        assert!((operator_norm(&t.matrix, 1e-8).unwrap().value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn k_zero_is_identity_tensor_coefficient() {
        let g = free(2);
        let f = SphereFunction::random(g, 0, 2, 1.0, 5).unwrap();
        let fe = f.support().values().next().unwrap().clone();
        let t = truncated_lambda(&f, 1).unwrap();
        let expected = operator_norm(&fe, 1e-8).unwrap().value;
        assert!((operator_norm(&t.matrix, 1e-8).unwrap().value - expected).abs() < 1e-10);
    }
}
