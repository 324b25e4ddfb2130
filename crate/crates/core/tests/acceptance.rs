//! Acceptance suite. Prints one line per criterion and exits non-zero if any
//! criterion fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use nalgebra::DMatrix;

use hypnorm::haagerup::{
    assemble_m, block_operator, bound_buchholz, bound_haagerup_scalar, bound_lemma_block, build_counterexample,
    count_t, counterexample_set, proof_trace_check, truncated_lambda,
};
use hypnorm::spectral::{hs_norm, operator_norm, operator_norm_with};
use hypnorm::verify::{run_verify, trial_seed, PartialVerifyConfig, VerifyConfig, EXIT_VIOLATION};
use hypnorm::{GroupModel, NormOptions, SphereFunction};

const SLACK: f64 = 1e-9;
const HS_TOL: f64 = 1e-10;
const CE_REL_TOL: f64 = 1e-6;
const NORM_TOL: f64 = 1e-8;
const CONVERGENCE_WINDOW: f64 = 0.05;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn config(ineq: &str, group: &str, k: &str, trials: usize) -> PartialVerifyConfig {
    PartialVerifyConfig {
        ineq: Some(vec![ineq.into()]),
        group: Some(group.into()),
        k: Some(k.into()),
        trials: Some(trials),
        seed: Some(2024),
        ..Default::default()
    }
}

fn resolve(p: PartialVerifyConfig) -> Result<VerifyConfig, String> {
    p.resolve().map_err(|e| e.to_string())
}

fn free2() -> GroupModel {
    GroupModel::free(2).unwrap()
}

fn all_pass(cfg: &VerifyConfig) -> Result<(usize, f64), String> {
    let out = run_verify(cfg).map_err(|e| e.to_string())?;
    let worst = out.reports.iter().map(|r| r.ratio).fold(0.0, f64::max);
    if let Some(r) = out.reports.iter().find(|r| !r.pass) {
        return Err(format!("k={} trial={} lhs={} rhs={}", r.k, r.trial, r.lhs, r.rhs));
    }
    Ok((out.reports.len(), worst))
}

fn scalar_haagerup() -> Outcome {
    let (n, worst) = all_pass(&resolve(config("haagerup", "free:2", "1..3", 50))?)?;
    if n != 150 {
        return Err(format!("expected 150 reports, got {n}"));
    }
    Ok(format!("150/150 trials, max ratio {worst:.4}"))
}

fn buchholz() -> Outcome {
    let mut total = 0;
    let mut worst: f64 = 0.0;
    for k in 1..=3 {
        for d in 1..=3 {
            let mut p = config("buchholz", "free:2", &k.to_string(), 20);
            p.d = Some(d);
            p.radius = Some(k + 3);
            let (n, w) = all_pass(&resolve(p)?)?;
            total += n;
            worst = worst.max(w);
        }
    }
    // the block sum never exceeds the scalar Haagerup bound
    let opts = NormOptions::with_tol(NORM_TOL);
    for k in 1..=3 {
        for t in 0..20 {
            let f = SphereFunction::random(free2(), k, 1, 1.0, trial_seed(2024, k, t)).unwrap();
            let b = bound_buchholz(&f, &opts).unwrap().value;
            let h = bound_haagerup_scalar(&f).unwrap();
            if b > h * (1.0 + SLACK) {
                return Err(format!("block sum {b} > (k+1)|f|_2 = {h} at k={k} trial={t}"));
            }
        }
    }
    Ok(format!("{total} reports pass, max ratio {worst:.4}; block sum <= (k+1)|f|_2 in 60/60"))
}

fn main_theorem() -> Outcome {
    let mut p = config("main", "free:2", "1..3", 20);
    p.delta = Some("proven".into());
    p.radius = None;
    let (na, wa) = {
        let mut cfg = resolve(p)?;
        cfg.radius = None;
        // keep the truncation at k+3 for every k
        let mut n = 0;
        let mut w: f64 = 0.0;
        for k in 1..=3 {
            let mut c = cfg.clone();
            c.ks = vec![k];
            c.radius = Some(k + 3);
            let (a, b) = all_pass(&c)?;
            n += a;
            w = w.max(b);
        }
        (n, w)
    };
    let mut nb = 0;
    let mut wb: f64 = 0.0;
    for k in 1..=2 {
        let mut p = config("main", "zfp:3,3", &k.to_string(), 10);
        p.delta = Some("estimate:4".into());
        p.radius = Some(k + 3);
        let cfg = resolve(p)?;
        let out = run_verify(&cfg).map_err(|e| e.to_string())?;
        for r in &out.reports {
            if !r.pass {
                return Err(format!("zfp:3,3 k={k} trial={} lhs={} rhs={}", r.trial, r.lhs, r.rhs));
            }
            if !r.delta_unverified {
                return Err("estimated delta not flagged unverified".into());
            }
        }
        nb += out.reports.len();
        wb = wb.max(out.reports.iter().map(|r| r.ratio).fold(0.0, f64::max));
    }
    Ok(format!("free:2 {na} pass (max ratio {wa:.4}); zfp:3,3 {nb} pass, flagged unverified (max ratio {wb:.4})"))
}

fn lemma_blocks() -> Outcome {
    let mut p = config("lemma-block", "free:2", "1..3", 5);
    p.m_max = Some(6);
    p.delta = Some("proven".into());
    let (n, worst) = all_pass(&resolve(p)?)?;
    let mut zeros = 0;
    for k in 1..=3 {
        let f = SphereFunction::random(free2(), k, 1, 1.0, trial_seed(2024, k, 0)).unwrap();
        for m in 0..=6usize {
            for nn in 0..=6usize {
                if m.abs_diff(nn) > k {
                    if !block_operator(&f, m, nn).unwrap().matrix.is_zero() {
                        return Err(format!("block ({m},{nn}) nonzero at k={k}"));
                    }
                    zeros += 1;
                }
            }
        }
    }
    // the campaign's own bound agrees with a direct evaluation
    let f = SphereFunction::random(free2(), 2, 1, 1.0, 11).unwrap();
    let lhs = operator_norm(&block_operator(&f, 3, 2).unwrap().matrix, NORM_TOL).unwrap().value;
    let rhs = bound_lemma_block(&f, 3, 2, 0, &NormOptions::with_tol(NORM_TOL)).unwrap().value;
    if lhs > rhs * (1.0 + SLACK) {
        return Err(format!("direct block (3,2): {lhs} > {rhs}"));
    }
    Ok(format!("{n} blocks within bound (max ratio {worst:.4}); {zeros} off-band blocks exactly zero"))
}

fn proof_trace() -> Outcome {
    let mut runs = 0;
    for k in 1..=3 {
        let f = SphereFunction::random(free2(), k, 1, 1.0, trial_seed(7, k, 0)).unwrap();
        for m in 0..=5usize {
            for n in 0..=5usize {
                if m.abs_diff(n) > k {
                    continue;
                }
                let t = proof_trace_check(&f, m, n, 0).map_err(|e| e.to_string())?;
                if !t.passed() {
                    return Err(format!("free:2 k={k} ({m},{n}): {:?}", t.violations[0]));
                }
                if t.u_length_range.is_some() && t.max_x_multiplicity != 1 {
                    return Err(format!("x multiplicity {} at k={k} ({m},{n})", t.max_x_multiplicity));
                }
                runs += 1;
            }
        }
    }
    let g: GroupModel = "zfp:3,3".parse().unwrap();
    let delta = g.estimate_delta(4).unwrap().delta;
    for k in 1..=2 {
        let f = SphereFunction::random(g.clone(), k, 1, 1.0, trial_seed(7, k, 0)).unwrap();
        for m in 0..=4usize {
            for n in 0..=4usize {
                if m.abs_diff(n) > k {
                    continue;
                }
                let t = proof_trace_check(&f, m, n, delta).map_err(|e| e.to_string())?;
                if !t.passed() {
                    return Err(format!("zfp:3,3 k={k} ({m},{n}): {:?}", t.violations[0]));
                }
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} exhaustive traces without violation (zfp:3,3 delta = {delta})"))
}

fn hilbert_schmidt() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for k in 0..=4 {
        let f = SphereFunction::random(free2(), k, 1, 1.0, trial_seed(3, k, 0)).unwrap();
        let l2 = f.l2_norm();
        for j in 0..=k {
            let hs = hs_norm(&assemble_m(&f, j, k - j).unwrap().matrix);
            worst = worst.max((hs - l2).abs());
            cases += 1;
        }
    }
    if worst > HS_TOL {
        return Err(format!("max deviation {worst:.3e}"));
    }
    Ok(format!("{cases} blocks, max deviation {worst:.1e}"))
}

fn counterexample() -> Outcome {
    let t: Vec<usize> = (1..=5).map(|k| counterexample_set(k).unwrap().len()).collect();
    if t[2] != 7 || t[3] != 21 || t[4] != 61 {
        return Err(format!("t_1..t_5 = {t:?}"));
    }
    for k in 1..=10 {
        if count_t(k) != counterexample_set(k).unwrap().len() as u128 {
            return Err(format!("recurrence disagrees with enumeration at k={k}"));
        }
    }
    for k in 2..=4 {
        let f = build_counterexample(k).unwrap();
        let m = assemble_m(&f, k, k).unwrap();
        let norm = operator_norm(&m.matrix, 1e-10).unwrap().value;
        let tk = t[k - 1] as f64;
        if (norm - tk).abs() > CE_REL_TOL * tk {
            return Err(format!("|M_kk| = {norm} vs t_{k} = {tk}"));
        }
    }
    let first = (1..=13).find(|&k| {
        let tk = count_t(k) as f64;
        tk.sqrt() / (2.0 * (1.0 + 2.0 * k as f64)) > 1.0
    });
    let Some(first) = first else {
        return Err("ratio stays below 1 for k <= 13 at d = 1".into());
    };
    for k in 4..=10 {
        if count_t(k) < 1u128 << k {
            return Err(format!("t_{k} < 2^{k}"));
        }
    }
    Ok(format!("t_3..t_5 = 7, 21, 61; norms match t_k; d = 1 ratio first exceeds 1 at k = {first}"))
}

fn delta_estimation() -> Outcome {
    for g in ["free:2", "free:1"] {
        let e = g.parse::<GroupModel>().unwrap().estimate_delta(3).unwrap();
        if e.delta != 0 || !e.is_exhaustive {
            return Err(format!("{g}: delta {} exhaustive {}", e.delta, e.is_exhaustive));
        }
    }
    for g in ["free:2", "zfp:3,3", "zfp:2,3"] {
        let g: GroupModel = g.parse().unwrap();
        let (a, b) = (g.estimate_delta(2).unwrap().delta, g.estimate_delta_unreduced(2).unwrap().delta);
        if a != b {
            return Err(format!("{g}: reduced {a} != unreduced {b} on B_2"));
        }
    }
    let g: GroupModel = "zfp:3,3".parse().unwrap();
    let ds: Vec<u32> = (1..=4).map(|r| g.estimate_delta(r).unwrap().delta).collect();
    if ds.windows(2).any(|w| w[0] > w[1]) {
        return Err(format!("zfp:3,3 delta(R) = {ds:?} decreases"));
    }
    Ok(format!("free groups delta = 0; reduced = unreduced; zfp:3,3 delta(1..4) = {ds:?}"))
}

// Top eigenvalue of the radial part of the tree adjacency on B_R: the Perron
// vector of a ball in the 4-regular tree is constant on spheres.
fn radial_oracle(radius: usize) -> f64 {
    let n = radius + 1;
    let t = DMatrix::<f64>::from_fn(n, n, |i, j| match i.abs_diff(j) {
        1 if i.min(j) == 0 => 2.0,
        1 => 3f64.sqrt(),
        _ => 0.0,
    });
    t.symmetric_eigenvalues().max()
}

fn convergence() -> Outcome {
    let f = SphereFunction::sphere_indicator(free2(), 1).unwrap();
    let limit = 2.0 * 3f64.sqrt();
    let opts = NormOptions::with_tol(1e-10);
    let mut norms = Vec::new();
    for r in [4, 6, 8] {
        let t = truncated_lambda(&f, r).unwrap();
        let v = operator_norm_with(&t.matrix, &opts).unwrap().value;
        let oracle = radial_oracle(r);
        if (v - oracle).abs() > 1e-6 {
            return Err(format!("R={r}: {v} vs radial oracle {oracle}"));
        }
        norms.push(v);
    }
    if norms.windows(2).any(|w| w[0] >= w[1]) {
        return Err(format!("not increasing: {norms:?}"));
    }
    if norms.iter().any(|&v| v <= 3.0 || v > limit + 1e-6) {
        return Err(format!("outside (3, 2*sqrt 3]: {norms:?}"));
    }
    let gap = (limit - norms[2]) / limit;
    if gap > CONVERGENCE_WINDOW {
        return Err(format!("R=8 norm {:.6} is {:.2}% below 2*sqrt 3", norms[2], 100.0 * gap));
    }
    Ok(format!(
        "R=4,6,8: {:.6}, {:.6}, {:.6}; R=8 within {:.2}% of 2*sqrt 3",
        norms[0],
        norms[1],
        norms[2],
        100.0 * gap
    ))
}

fn strip_timing(s: &str) -> String {
    s.lines()
        .map(|l| {
            let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
            v.as_object_mut().unwrap().remove("timing_ms");
            v.to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn reproducibility() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_hypnorm");
    let args = [
        "verify", "--group", "free:2", "--ineq", "haagerup,main,rd", "--k", "1..2", "--trials", "4", "--seed", "99",
        "--format", "jsonl",
    ];
    let run = |extra: &[&str]| {
        Command::new(bin)
            .args(args)
            .args(extra)
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run(&[])?, run(&[])?);
    if !a.status.success() || !b.status.success() {
        return Err(format!("exit {:?} / {:?}", a.status.code(), b.status.code()));
    }
    let (sa, sb) = (String::from_utf8_lossy(&a.stdout), String::from_utf8_lossy(&b.stdout));
    if strip_timing(&sa) != strip_timing(&sb) {
        return Err("outputs differ".into());
    }
    let forced = run(&["--rhs-scale", "0.01"])?;
    if forced.status.code() != Some(EXIT_VIOLATION) {
        return Err(format!("forced violation exited {:?}", forced.status.code()));
    }
    Ok(format!("{} identical lines; --rhs-scale 0.01 exits 2", sa.lines().count()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("scalar Haagerup inequality", scalar_haagerup),
        ("block-sum inequality", buchholz),
        ("main theorem bound", main_theorem),
        ("exact sphere-block bound", lemma_blocks),
        ("proof-trace invariants", proof_trace),
        ("Hilbert-Schmidt identity", hilbert_schmidt),
        ("counterexample family", counterexample),
        ("delta estimation", delta_estimation),
        ("truncation convergence", convergence),
        ("reproducibility and exit codes", reproducibility),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = check();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("[PASS] {:>2} {name}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
