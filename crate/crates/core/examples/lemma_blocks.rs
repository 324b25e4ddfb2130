//! Exact sphere-to-sphere blocks `P_m λ(f) P_n` against their block-norm
//! bound. No truncation is involved, so these comparisons are exact.

use hypnorm::haagerup::{block_operator, bound_lemma_block};
use hypnorm::spectral::operator_norm;
use hypnorm::{GroupModel, NormOptions, SphereFunction};

fn main() -> hypnorm::Result<()> {
    let g = GroupModel::free(2)?;
    let f = SphereFunction::random(g, 2, 1, 1.0, 5)?;
    let opts = NormOptions::with_tol(1e-10);
    println!("{:>2} {:>2} {:>10} {:>10} {:>7}", "m", "n", "|block|", "bound", "ratio");
    for m in 0..=5usize {
        for n in 0..=5usize {
            if m.abs_diff(n) > f.k() {
                assert!(block_operator(&f, m, n)?.matrix.is_zero());
                continue;
            }
            let lhs = operator_norm(&block_operator(&f, m, n)?.matrix, 1e-10)?.value;
            let rhs = bound_lemma_block(&f, m, n, 0, &opts)?.value;
            let ratio = if rhs > 0.0 { lhs / rhs } else { 0.0 };
            println!("{m:>2} {n:>2} {lhs:>10.5} {rhs:>10.5} {ratio:>7.4}");
        }
    }
    Ok(())
}
