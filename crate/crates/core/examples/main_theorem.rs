//! The hyperbolic-group bound `2 #B_{1+2δ} Σ |M_{j,i}(f)|` on `F_2` (δ = 0)
//! and on `Z/3 * Z/3` with δ taken from a ball estimate.

use hypnorm::haagerup::{bound_main_theorem, bound_remark3, truncated_lambda};
use hypnorm::spectral::operator_norm;
use hypnorm::{GroupModel, NormOptions, SphereFunction};

fn main() -> hypnorm::Result<()> {
    let opts = NormOptions::with_tol(1e-8);
    for name in ["free:2", "zfp:3,3"] {
        let g: GroupModel = name.parse()?;
        let delta = g.estimate_delta(4)?.delta;
        for k in 1..=2 {
            let f = SphereFunction::random(g.clone(), k, 2, 1.0, 9)?;
            let lhs = operator_norm(&truncated_lambda(&f, k + 3)?.matrix, 1e-8)?.value;
            let main = bound_main_theorem(&f, delta, &opts)?;
            let refined = bound_remark3(&f, delta, &opts)?;
            println!(
                "{name} k={k} δ={delta}: |λ(f)| ≈ {lhs:.4}, bound {:.4} (factor {}), divided variant {:.4}",
                main.value, main.factor, refined.value
            );
        }
    }
    Ok(())
}
