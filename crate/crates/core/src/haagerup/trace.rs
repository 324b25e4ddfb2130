use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::spectral::rng;

use super::function::SphereFunction;
use super::operators::{assemble_m, block_operator};

/// One triple `x = y z` with its decomposition `φ(x, p) = (x₁, x₂)` and
/// `u = y⁻¹ x₁`, so that `z = u x₂`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub x: GroupElement,
    pub x1: GroupElement,
    pub x2: GroupElement,
    pub y: GroupElement,
    pub z: GroupElement,
    pub u: GroupElement,
    /// `ℓ(u) − ⌈p/2⌉`.
    pub s: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceCheck {
    /// `⌈p/2⌉ ≤ ℓ(u) ≤ ⌈p/2⌉ + δ`
    ULength,
    /// `#{(x₁, x₂) : x₁x₂ = x} ≤ #B_δ`
    XMultiplicity,
    /// `#{(x₂, u) : u x₂ = z} ≤ #B_{δ+s+1}`
    ZMultiplicity,
    /// `z = u x₂` and the block rewriting of `⟨η, λ(f) ξ⟩`
    Identity,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceViolation {
    pub check: TraceCheck,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZCount {
    pub s: usize,
    pub max_count: u64,
    pub bound: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Diagnosis {
    /// The checks pass once `δ` is increased by one.
    DeltaUnderestimated,
    /// The checks still fail at `δ + 1`.
    Inconsistent,
}

/// Outcome of [`proof_trace_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProofTrace {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub delta: u32,
    pub records: Vec<TraceRecord>,
    /// `[⌈p/2⌉, ⌈p/2⌉ + δ]`
    pub u_window: (usize, usize),
    pub u_length_range: Option<(usize, usize)>,
    pub max_x_multiplicity: u64,
    pub x_multiplicity_bound: u64,
    pub z_counts: Vec<ZCount>,
    /// `Σ_{x₂} ‖η_{x₂}‖² / ‖η‖²` for the synthetic test vector.
    pub eta_mass_ratio: f64,
    /// `Σ_{x₂} ‖ξ_{x₂,s}‖² / ‖ξ‖²`, one entry per `s`.
    pub xi_mass_ratios: Vec<f64>,
    /// Relative gap between `⟨η, λ(f)ξ⟩` and its block rewriting.
    pub identity_error: f64,
    /// Smallest margin over all integer checks (negative on violation).
    pub tightest_slack: i64,
    pub violations: Vec<TraceViolation>,
    pub diagnosis: Option<Diagnosis>,
}

impl ProofTrace {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<Self> {
        match self.violations.first() {
            None => Ok(self),
            Some(v) => Err(Error::ProofTraceViolation {
                count: self.violations.len(),
                first: format!("{:?}: {}", v.check, v.detail),
            }),
        }
    }
}

const IDENTITY_TOL: f64 = 1e-9;

/// Replays the combinatorics of the block-norm estimate for
/// `P_m λ(f) P_n` exhaustively: every triple `x = yz` with `x ∈ S_m`,
/// `y ∈ S_k`, `z ∈ S_n`, the length window of `u`, both multiplicity counts,
/// and the rewriting of `⟨η, λ(f)ξ⟩` as a sum of `M_{k−⌈p/2⌉, ⌈p/2⌉+s}`
/// pairings on seeded random `η`, `ξ`.
///
/// If any check fails, the run is repeated with `δ + 1` to tell an
/// underestimated `δ` apart from an inconsistency.
pub fn proof_trace_check(f: &SphereFunction, m: usize, n: usize, delta: u32) -> Result<ProofTrace> {
    let mut trace = trace_at(f, m, n, delta)?;
    if !trace.passed() {
        let retry = trace_at(f, m, n, delta + 1)?;
        trace.diagnosis = Some(if retry.passed() {
            Diagnosis::DeltaUnderestimated
        } else {
            Diagnosis::Inconsistent
        });
    }
    Ok(trace)
}

fn trace_at(f: &SphereFunction, m: usize, n: usize, delta: u32) -> Result<ProofTrace> {
    let g = f.group();
    let k = f.k();
    if m.abs_diff(n) > k {
        return Err(Error::InvalidInput(format!(
            "|m - n| = {} exceeds k = {k}",
            m.abs_diff(n)
        )));
    }
    let p = n + k - m;
    let half_up = p.div_ceil(2);
    let half_down = p / 2;
    let dl = delta as usize;
    let window = (half_up, half_up + dl);
    let x1_len = k - half_up;

    let mut trace = ProofTrace {
        m,
        n,
        k,
        p,
        delta,
        records: Vec::new(),
        u_window: window,
        u_length_range: None,
        max_x_multiplicity: 0,
        x_multiplicity_bound: g.ball_size(dl) as u64,
        z_counts: Vec::new(),
        eta_mass_ratio: 0.0,
        xi_mass_ratios: Vec::new(),
        identity_error: 0.0,
        tightest_slack: i64::MAX,
        violations: Vec::new(),
        diagnosis: None,
    };

    // With m + n < k there is no triple and φ(·, p) is undefined.
    let Some(x2_len) = n.checked_sub(half_down) else {
        trace.tightest_slack = 0;
        return Ok(trace);
    };
    debug_assert_eq!(x1_len + x2_len, m);

    let s_m = g.enumerate_sphere(m)?;
    let s_k = g.enumerate_sphere(k)?;
    let s_n = g.enumerate_sphere(n)?;
    let s_x2 = g.enumerate_sphere(x2_len)?;
    let slack = |v: i64, trace: &mut ProofTrace| trace.tightest_slack = trace.tightest_slack.min(v);

    // (a) triples and the window for ℓ(u)
    let splits: Vec<(GroupElement, GroupElement)> = s_m
        .iter()
        .map(|x| g.geodesic_split(x, x1_len, x2_len))
        .collect::<Result<_>>()?;
    for (x, (x1, x2)) in s_m.iter().zip(&splits) {
        for y in s_k.iter() {
            let z = g.mul(&g.inverse(y), x);
            if g.length(&z) != n {
                continue;
            }
            let u = g.mul(&g.inverse(y), x1);
            let lu = g.length(&u);
            trace.u_length_range = Some(match trace.u_length_range {
                None => (lu, lu),
                Some((lo, hi)) => (lo.min(lu), hi.max(lu)),
            });
            slack(lu as i64 - window.0 as i64, &mut trace);
            slack(window.1 as i64 - lu as i64, &mut trace);
            if lu < window.0 || lu > window.1 {
                trace.violations.push(TraceViolation {
                    check: TraceCheck::ULength,
                    detail: format!("x = {x}, y = {y}: ℓ(u) = {lu} outside [{}, {}]", window.0, window.1),
                });
            }
            if g.mul(&u, x2) != z {
                trace.violations.push(TraceViolation {
                    check: TraceCheck::Identity,
                    detail: format!("z ≠ u x₂ for x = {x}, y = {y}"),
                });
            }
            trace.records.push(TraceRecord {
                x: x.clone(),
                x1: x1.clone(),
                x2: x2.clone(),
                y: y.clone(),
                z,
                u,
                s: lu as i64 - half_up as i64,
            });
        }
    }

    // (b) decompositions of each x into S_{k−⌈p/2⌉} × S_{n−⌊p/2⌋}
    let counts = g.decomposition_multiplicities(s_m.elements(), x1_len, x2_len)?;
    for (x, &c) in s_m.iter().zip(&counts) {
        trace.max_x_multiplicity = trace.max_x_multiplicity.max(c);
        slack(trace.x_multiplicity_bound as i64 - c as i64, &mut trace);
        if c > trace.x_multiplicity_bound {
            trace.violations.push(TraceViolation {
                check: TraceCheck::XMultiplicity,
                detail: format!("x = {x} has {c} decompositions, bound {}", trace.x_multiplicity_bound),
            });
        }
    }

    // (c) for each z, pairs (x₂, u) with u x₂ = z and ℓ(u) = ⌈p/2⌉ + s
    let x2_inv: Vec<GroupElement> = s_x2.iter().map(|x2| g.inverse(x2)).collect();
    for s in 0..=dl {
        let bound = g.ball_size(dl + s + 1) as u64;
        let mut max_count = 0;
        for z in s_n.iter() {
            let c = x2_inv
                .iter()
                .filter(|inv| g.length(&g.mul(z, inv)) == half_up + s)
                .count() as u64;
            max_count = max_count.max(c);
            slack(bound as i64 - c as i64, &mut trace);
            if c > bound {
                trace.violations.push(TraceViolation {
                    check: TraceCheck::ZMultiplicity,
                    detail: format!("z = {z}, s = {s}: {c} pairs, bound {bound}"),
                });
            }
        }
        trace.z_counts.push(ZCount { s, max_count, bound });
    }

    // (d) ⟨η, λ(f)ξ⟩ = Σ_{x₂} Σ_s ⟨η_{x₂}, M_{k−⌈p/2⌉, ⌈p/2⌉+s}(f) ξ_{x₂,s}⟩
    let d = f.dim();
    let mut r = rng::seeded(rng::derive_seed(0x7ace, (m * 1000 + n * 10 + k) as u64));
    let eta: Vec<Complex64> = (0..s_m.len() * d).map(|_| rng::complex_gaussian(&mut r)).collect();
    let xi: Vec<Complex64> = (0..s_n.len() * d).map(|_| rng::complex_gaussian(&mut r)).collect();
    let sq = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let inner = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    };

    let block = block_operator(f, m, n)?;
    let mut lam_xi = vec![Complex64::new(0.0, 0.0); s_m.len() * d];
    block.matrix.matvec(&xi, &mut lam_xi);
    let lhs = inner(&eta, &lam_xi);

    let s_x1 = g.enumerate_sphere(x1_len)?;
    let mut rhs = Complex64::new(0.0, 0.0);
    let mut eta_mass = 0.0;
    let mut xi_mass = vec![0.0; dl + 1];
    let blocks = (0..=dl)
        .map(|s| assemble_m(f, x1_len, half_up + s))
        .collect::<Result<Vec<_>>>()?;
    for x2 in s_x2.iter() {
        let mut eta_x2 = vec![Complex64::new(0.0, 0.0); s_x1.len() * d];
        for (i, x1) in s_x1.iter().enumerate() {
            let x = g.mul(x1, x2);
            if let Some(xi_idx) = s_m.index_of(&x) {
                if splits[xi_idx] == (x1.clone(), x2.clone()) {
                    eta_x2[i * d..(i + 1) * d].copy_from_slice(&eta[xi_idx * d..(xi_idx + 1) * d]);
                }
            }
        }
        eta_mass += sq(&eta_x2);
        for (s, b) in blocks.iter().enumerate() {
            let mut xi_x2 = vec![Complex64::new(0.0, 0.0); b.col_sphere.len() * d];
            for (i, u) in b.col_sphere.iter().enumerate() {
                if let Some(zi) = s_n.index_of(&g.mul(u, x2)) {
                    xi_x2[i * d..(i + 1) * d].copy_from_slice(&xi[zi * d..(zi + 1) * d]);
                }
            }
            xi_mass[s] += sq(&xi_x2);
            let mut mx = vec![Complex64::new(0.0, 0.0); b.row_sphere.len() * d];
            b.matrix.matvec(&xi_x2, &mut mx);
            rhs += inner(&eta_x2, &mx);
        }
    }
    let scale = (sq(&eta) * sq(&lam_xi)).sqrt().max(1.0);
    trace.identity_error = (lhs - rhs).norm() / scale;
    trace.eta_mass_ratio = eta_mass / sq(&eta).max(f64::MIN_POSITIVE);
    trace.xi_mass_ratios = xi_mass.iter().map(|v| v / sq(&xi).max(f64::MIN_POSITIVE)).collect();
    if trace.identity_error > IDENTITY_TOL {
        trace.violations.push(TraceViolation {
            check: TraceCheck::Identity,
            detail: format!("block rewriting off by {:.3e}", trace.identity_error),
        });
    }
    if trace.tightest_slack == i64::MAX {
        trace.tightest_slack = 0;
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupModel;

    fn free2() -> GroupModel {
        "free:2".parse().unwrap()
    }

    #[test]
    fn tree_u_lengths_are_exact() {
        let f = SphereFunction::random(free2(), 2, 1, 1.0, 1).unwrap();
        let t = proof_trace_check(&f, 2, 2, 0).unwrap();
        assert_eq!(t.p, 2);
        assert!(t.passed(), "{:?}", t.violations);
        assert!(!t.records.is_empty());
        assert!(t.records.iter().all(|r| r.s == 0));
        assert_eq!(t.u_length_range, Some((1, 1)));
        assert!(t.identity_error < 1e-12);
    }

    #[test]
    fn tree_multiplicity_is_one() {
        let f = SphereFunction::random(free2(), 3, 1, 1.0, 2).unwrap();
        for m in 0..=4usize {
            for n in 0..=4usize {
                if m.abs_diff(n) > 3 {
                    continue;
                }
                let t = proof_trace_check(&f, m, n, 0).unwrap();
                assert!(t.passed(), "m={m} n={n}: {:?}", t.violations);
                if m + n >= 3 {
                    assert_eq!(t.max_x_multiplicity, 1);
                }
                assert!(t.eta_mass_ratio <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn boundary_p_zero_allows_trivial_u() {
        let f = SphereFunction::random(free2(), 2, 1, 1.0, 3).unwrap();
        let t = proof_trace_check(&f, 3, 1, 0).unwrap();
        assert_eq!(t.p, 0);
        assert_eq!(t.u_window, (0, 0));
        assert!(t.records.iter().all(|r| r.u.is_identity()));
        assert!(t.passed());
    }

    #[test]
    fn rejects_far_spheres() {
        let f = SphereFunction::random(free2(), 1, 1, 1.0, 3).unwrap();
        assert!(proof_trace_check(&f, 4, 1, 0).is_err());
    }

    #[test]
    fn into_result_surfaces_violations() {
        let f = SphereFunction::random(free2(), 2, 1, 1.0, 3).unwrap();
        let mut t = proof_trace_check(&f, 2, 2, 0).unwrap();
        assert!(t.clone().into_result().is_ok());
        t.violations.push(TraceViolation {
            check: TraceCheck::ULength,
            detail: "synthetic".into(),
        });
        assert!(matches!(t.into_result(), Err(Error::ProofTraceViolation { count: 1, .. })));
    }
}
