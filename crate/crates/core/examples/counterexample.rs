//! The family of functions on `F_2` showing that no weighted row/column bound
//! `C (1+2k)^d max(|Σ f*f|, |Σ ff*|)^{1/2}` can hold in general.

use hypnorm::verify::{run_counterexample, write_counterexample_table};

fn main() -> hypnorm::Result<()> {
    for d in [0, 1, 2] {
        let table = run_counterexample(14, d)?;
        println!("d = {d}");
        write_counterexample_table(&mut std::io::stdout(), &table).expect("stdout");
        println!();
    }
    Ok(())
}
