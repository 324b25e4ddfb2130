//! Exhaustive replay of the combinatorics behind the block bound: the length
//! window of the middle factor and both multiplicity counts.

use hypnorm::haagerup::proof_trace_check;
use hypnorm::{GroupModel, SphereFunction};

fn main() -> hypnorm::Result<()> {
    for (name, k, m, n) in [("free:2", 2, 2, 2), ("free:2", 3, 4, 3), ("zfp:3,3", 2, 3, 1), ("zfp:3,3", 2, 1, 1)] {
        let g: GroupModel = name.parse()?;
        let delta = g.estimate_delta(3)?.delta;
        let f = SphereFunction::random(g, k, 1, 1.0, 1)?;
        let t = proof_trace_check(&f, m, n, delta)?;
        println!(
            "{name} k={k} (m,n)=({m},{n}) δ={delta}: {} triples, |u| in {:?} (window {:?}), x-multiplicity ≤ {} (bound {}), identity error {:.1e}, {}",
            t.records.len(),
            t.u_length_range,
            t.u_window,
            t.max_x_multiplicity,
            t.x_multiplicity_bound,
            t.identity_error,
            if t.passed() { "ok" } else { "VIOLATED" }
        );
    }

    Ok(())
}
