//! `|λ(f)| ≤ (k+1)|f|_2` for random scalar `f` on spheres of `F_2`, with
//! the polynomial rapid-decay bound alongside.

use hypnorm::haagerup::{bound_haagerup_scalar, bound_rapid_decay, truncated_lambda};
use hypnorm::spectral::operator_norm;
use hypnorm::{GroupModel, SphereFunction};

fn main() -> hypnorm::Result<()> {
    let g = GroupModel::free(2)?;
    println!("{:>2} {:>5} {:>10} {:>10} {:>10}", "k", "seed", "|λ(f)|", "(k+1)|f|", "RD bound");
    for k in 1..=3 {
        for seed in 0..3 {
            let f = SphereFunction::random(g.clone(), k, 1, 1.0, seed)?;
            let lhs = operator_norm(&truncated_lambda(&f, k + 4)?.matrix, 1e-8)?.value;
            let rd = bound_rapid_decay(&g, &f.scalar_values()?);
            println!(
                "{k:>2} {seed:>5} {lhs:>10.5} {:>10.5} {rd:>10.5}",
                bound_haagerup_scalar(&f)?
            );
        }
    }
    Ok(())
}
