//! Operator-valued `f` on `F_2`: the truncated norm against the sum of block
//! norms `Σ_j |M_{j,k-j}(f)|`, and for `k = 1` the row/column bound.

use hypnorm::haagerup::{bound_buchholz, bound_row_column, truncated_lambda};
use hypnorm::spectral::operator_norm;
use hypnorm::{GroupModel, NormOptions, SphereFunction};

fn main() -> hypnorm::Result<()> {
    let g = GroupModel::free(2)?;
    let opts = NormOptions::with_tol(1e-8);
    for (k, d) in [(1, 2), (1, 3), (2, 2), (3, 2)] {
        let f = SphereFunction::random(g.clone(), k, d, 1.0, 42)?;
        let lhs = operator_norm(&truncated_lambda(&f, k + 3)?.matrix, 1e-8)?.value;
        let b = bound_buchholz(&f, &opts)?;
        let terms: Vec<String> = b.terms.iter().map(|t| format!("{:.3}", t.norm)).collect();
        print!("k={k} d={d}: |λ(f)| ≈ {lhs:.4} ≤ {:.4} = {}", b.value, terms.join(" + "));
        if k == 1 {
            print!("; row/column bound {:.4}", bound_row_column(&f)?);
        }
        println!();
    }
    Ok(())
}
