use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;

use super::element::GroupElement;
use super::model::GroupModel;

/// Ball-restricted lower bound for the four-point hyperbolicity constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperbolicityEstimate {
    pub radius: usize,
    pub delta: u32,
    pub is_exhaustive: bool,
    pub ball_size: usize,
    pub tuples_checked: u64,
}

/// How far the quadruple with pair sums `(xy + zw, xz + yw, xw + yz)` is from
/// satisfying the four-point condition with `δ = 0`.
#[inline]
pub fn four_point_excess(xy_zw: u32, xz_yw: u32, xw_yz: u32) -> u32 {
    xy_zw.saturating_sub(xz_yw.max(xw_yz))
}

impl GroupModel {
    /// `d(g, h) = ℓ(g h⁻¹)`. Right translations are isometries of this metric.
    pub fn distance(&self, g: &GroupElement, h: &GroupElement) -> usize {
        self.length(&self.mul(g, &self.inverse(h)))
    }

    fn distance_table(&self, ball: &[GroupElement]) -> Vec<u32> {
        let n = ball.len();
        let inverses: Vec<GroupElement> = ball.iter().map(|x| self.inverse(x)).collect();
        (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let inverses = &inverses;
                (0..n).map(move |j| self.length(&self.mul(&ball[i], &inverses[j])) as u32)
            })
            .collect()
    }

    /// Smallest integer `δ ≥ 0` with
    /// `d(x,y) + d(z,w) ≤ max{d(x,z) + d(y,w), d(x,w) + d(y,z)} + δ`
    /// over all quadruples with `x = e` and `y, z, w ∈ B_R`.
    ///
    /// Pinning one point at `e` loses nothing because right translation is an
    /// isometry, so this is a lower bound for the hyperbolicity constant of
    /// the whole group.
    pub fn estimate_delta(&self, radius: usize) -> Result<HyperbolicityEstimate> {
        let ball = self.enumerate_ball(radius)?;
        let pts = ball.elements();
        let n = pts.len();
        let dist = self.distance_table(pts);
        // d(e, y) = ℓ(y)
        let len: Vec<u32> = pts.iter().map(|y| self.length(y) as u32).collect();
        let delta = (0..n)
            .into_par_iter()
            .map(|y| {
                let mut worst = 0;
                let dy = &dist[y * n..(y + 1) * n];
                for z in 0..n {
                    let dz = &dist[z * n..(z + 1) * n];
                    for w in 0..n {
                        let excess = four_point_excess(
                            len[y] + dz[w],
                            len[z] + dy[w],
                            len[w] + dy[z],
                        );
                        worst = worst.max(excess);
                    }
                }
                worst
            })
            .max()
            .unwrap_or(0);
        Ok(HyperbolicityEstimate {
            radius,
            delta,
            is_exhaustive: true,
            ball_size: n,
            tuples_checked: (n as u64).pow(3),
        })
    }

    /// Full scan over every quadruple in `B_R`, with no point pinned. Quartic
    /// in `#B_R`; used to cross-check [`estimate_delta`](Self::estimate_delta)
    /// on small balls.
    pub fn estimate_delta_unreduced(&self, radius: usize) -> Result<HyperbolicityEstimate> {
        let ball = self.enumerate_ball(radius)?;
        let n = ball.len();
        let dist = self.distance_table(ball.elements());
        let d = |a: usize, b: usize| dist[a * n + b];
        let delta = (0..n)
            .into_par_iter()
            .map(|x| {
                let mut worst = 0;
                for y in 0..n {
                    for z in 0..n {
                        for w in 0..n {
                            worst = worst.max(four_point_excess(
                                d(x, y) + d(z, w),
                                d(x, z) + d(y, w),
                                d(x, w) + d(y, z),
                            ));
                        }
                    }
                }
                worst
            })
            .max()
            .unwrap_or(0);
        Ok(HyperbolicityEstimate {
            radius,
            delta,
            is_exhaustive: true,
            ball_size: n,
            tuples_checked: (n as u64).pow(4),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_conventions() {
        let g: GroupModel = "free:2".parse().unwrap();
        let x = g.word(&[(0, 1), (1, -1), (0, 1)]).unwrap();
        assert_eq!(g.distance(&x, &x), 0);
        assert_eq!(g.distance(&GroupElement::identity(), &x), 3);
        // z = u·x₂ gives d(z, x₂) = ℓ(u)
        let u = g.word(&[(1, 1), (0, 1)]).unwrap();
        let x2 = g.word(&[(0, 1), (1, 1)]).unwrap();
        let z = g.mul(&u, &x2);
        assert_eq!(g.distance(&z, &x2), g.length(&u));
    }

    #[test]
    fn trees_are_zero_hyperbolic() {
        for desc in ["free:1", "free:2"] {
            let g: GroupModel = desc.parse().unwrap();
            for r in 0..=3 {
                assert_eq!(g.estimate_delta(r).unwrap().delta, 0, "{desc} R={r}");
            }
        }
        let z: GroupModel = "free:1".parse().unwrap();
        assert_eq!(z.estimate_delta(4).unwrap().delta, 0);
    }

    #[test]
    fn reduced_scan_agrees_with_full_scan() {
        let g: GroupModel = "free:2".parse().unwrap();
        let reduced = g.estimate_delta(2).unwrap();
        let full = g.estimate_delta_unreduced(2).unwrap();
        assert_eq!(reduced.delta, full.delta);
        assert_eq!(full.tuples_checked, 17u64.pow(4));
    }

    #[test]
    fn excess_helper() {
        assert_eq!(four_point_excess(5, 3, 4), 1);
        assert_eq!(four_point_excess(2, 3, 1), 0);
    }
}
