//! Four-point hyperbolicity estimates on balls of growing radius.

use hypnorm::GroupModel;

fn main() -> hypnorm::Result<()> {
    for name in ["free:1", "free:2", "zfp:2,3", "zfp:3,3"] {
        let g: GroupModel = name.parse()?;
        let deltas = (1..=3)
            .map(|r| g.estimate_delta(r).map(|e| e.delta))
            .collect::<hypnorm::Result<Vec<_>>>()?;
        let e = g.estimate_delta(3)?;
        println!(
            "{name:>8}: delta(R = 1..3) = {deltas:?}  ({} tuples over #B_3 = {})",
            e.tuples_checked, e.ball_size
        );
    }
    // the full quadruple scan agrees with the one-point-fixed reduction
    let g: GroupModel = "zfp:2,3".parse()?;
    println!(
        "zfp:2,3 on B_2: reduced {} / unreduced {}",
        g.estimate_delta(2)?.delta,
        g.estimate_delta_unreduced(2)?.delta
    );
    Ok(())
}
