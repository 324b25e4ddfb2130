//! Operator norms of sparse complex matrices: exact path, power iteration,
//! and the Hilbert-Schmidt upper bound.

use hypnorm::spectral::{exact_norm, hs_norm, power_iteration_norm, rng};
use hypnorm::NormOptions;

fn main() -> hypnorm::Result<()> {
    let a = rng::random_matrix(50, 30, 7);
    let exact = exact_norm(&a)?;
    let power = power_iteration_norm(&a, &NormOptions::with_tol(1e-10))?;
    println!("50x30 Gaussian, seed 7");
    println!("  exact            {:.12}", exact.value);
    println!("  power iteration  {:.12} ({} iterations)", power.value, power.iterations);
    println!("  Hilbert-Schmidt  {:.12}", hs_norm(&a));

    let gram = a.adjoint().mul(&a)?;
    println!("  |A*A| = {:.12} = |A|^2 = {:.12}", exact_norm(&gram)?.value, exact.value.powi(2));
    Ok(())
}
