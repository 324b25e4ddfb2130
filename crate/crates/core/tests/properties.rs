use std::sync::OnceLock;

use num_complex::Complex64;
use proptest::prelude::*;

use hypnorm::group::SphereIndex;
use hypnorm::haagerup::{assemble_m, block_operator, truncated_lambda};
use hypnorm::spectral::{exact_norm, hs_norm, operator_norm, power_iteration_norm, rng};
use hypnorm::{ComplexMatrix, GroupElement, GroupModel, NormOptions, SphereFunction};

fn free2() -> GroupModel {
    GroupModel::free(2).unwrap()
}

fn zfp() -> GroupModel {
    "zfp:2,3".parse().unwrap()
}

fn ball6() -> &'static Vec<SphereIndex> {
    static B: OnceLock<Vec<SphereIndex>> = OnceLock::new();
    B.get_or_init(|| free2().enumerate_spheres(6).unwrap())
}

fn word(g: &GroupModel, max_len: usize) -> impl Strategy<Value = GroupElement> {
    let g = g.clone();
    let letters = g.alphabet();
    prop::collection::vec(0..letters.len(), 0..=max_len).prop_map(move |idx| {
        let ls: Vec<_> = idx.iter().map(|&i| letters[i]).collect();
        g.from_letters(&ls)
    })
}

fn ball6_element() -> impl Strategy<Value = GroupElement> {
    (0usize..=6, any::<prop::sample::Index>()).prop_map(|(k, i)| {
        let s = &ball6()[k];
        s.elements()[i.index(s.len())].clone()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn length_is_inversion_invariant(x in word(&free2(), 12), y in word(&zfp(), 12)) {
        prop_assert_eq!(free2().length(&x), free2().length(&free2().inverse(&x)));
        prop_assert_eq!(zfp().length(&y), zfp().length(&zfp().inverse(&y)));
    }

    #[test]
    fn multiplication_is_associative(x in word(&zfp(), 8), y in word(&zfp(), 8), z in word(&zfp(), 8)) {
        let g = zfp();
        prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
    }

    #[test]
    fn inverse_cancels(x in word(&free2(), 12)) {
        let g = free2();
        prop_assert!(g.mul(&x, &g.inverse(&x)).is_identity());
        prop_assert!(g.mul(&g.inverse(&x), &x).is_identity());
    }

    #[test]
    fn triangle_inequality(x in word(&zfp(), 10), y in word(&zfp(), 10)) {
        let g = zfp();
        prop_assert!(g.length(&g.mul(&x, &y)) <= g.length(&x) + g.length(&y));
    }

    #[test]
    fn geodesic_split_invariants(x in ball6_element(), cut in 0usize..=6) {
        let g = free2();
        let len = g.length(&x);
        let a = cut.min(len);
        let (x1, x2) = g.geodesic_split(&x, a, len - a).unwrap();
        prop_assert_eq!(g.length(&x1), a);
        prop_assert_eq!(g.length(&x2), len - a);
        prop_assert_eq!(&g.mul(&x1, &x2), &x);
        // in a tree the geodesic split is the only one
        prop_assert_eq!(g.decomposition_multiplicity(&x, a, len - a).unwrap(), 1);
    }

    #[test]
    fn distance_is_right_invariant(x in word(&free2(), 6), y in word(&free2(), 6), t in word(&free2(), 6)) {
        let g = free2();
        prop_assert_eq!(g.distance(&x, &y), g.distance(&g.mul(&x, &t), &g.mul(&y, &t)));
    }
}

fn random_scalar(g: &GroupModel, k: usize, seed: u64) -> SphereFunction {
    SphereFunction::random(g.clone(), k, 1, 1.0, seed).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn adjoint_block_identity(seed in any::<u64>(), k in 1usize..=3, d in 1usize..=2, i in 0usize..=3) {
        let g = free2();
        let f = SphereFunction::random(g, k, d, 1.0, seed).unwrap();
        let j = (k + 3 - i) % (k + 1);
        let m = assemble_m(&f, i, j).unwrap().matrix;
        let m_star = assemble_m(&f.adjoint(), j, i).unwrap().matrix;
        prop_assert_eq!(m.adjoint(), m_star);
    }

    #[test]
    fn hs_identity(seed in any::<u64>(), k in 0usize..=3) {
        let f = random_scalar(&free2(), k, seed);
        for j in 0..=k {
            let hs = hs_norm(&assemble_m(&f, j, k - j).unwrap().matrix);
            prop_assert!((hs - f.l2_norm()).abs() < 1e-10);
        }
    }

    #[test]
    fn blocks_agree_with_truncation(seed in any::<u64>(), k in 1usize..=2, m in 0usize..=3, n in 0usize..=3) {
        let f = random_scalar(&zfp(), k, seed);
        let t = truncated_lambda(&f, 3).unwrap();
        prop_assert_eq!(t.sphere_block(m, n), block_operator(&f, m, n).unwrap().matrix);
    }

    #[test]
    fn hermitian_function_gives_self_adjoint_truncation(seed in any::<u64>(), k in 1usize..=2) {
        let f = random_scalar(&free2(), k, seed).hermitian_part();
        let t = truncated_lambda(&f, k + 2).unwrap().matrix;
        prop_assert_eq!(t.adjoint(), t);
    }
}

#[test]
fn truncation_is_monotone() {
    for seed in 0..5 {
        let f = random_scalar(&free2(), 2, seed);
        let norms: Vec<f64> = (2..=5)
            .map(|r| operator_norm(&truncated_lambda(&f, r).unwrap().matrix, 1e-10).unwrap().value)
            .collect();
        for w in norms.windows(2) {
            assert!(w[0] <= w[1] * (1.0 + 1e-9), "{norms:?}");
        }
    }
}

#[test]
fn norm_invariants_on_seeded_matrices() {
    for seed in 0..100 {
        let (r, c) = (3 + (seed as usize % 17), 2 + (seed as usize * 7 % 13));
        let a = rng::random_matrix(r, c, seed);
        let n = exact_norm(&a).unwrap().value;
        assert!((exact_norm(&a.adjoint()).unwrap().value - n).abs() <= 1e-10 * n);
        let s = Complex64::new(-1.5, 2.0);
        assert!((exact_norm(&a.scale(s)).unwrap().value - s.norm() * n).abs() <= 1e-9 * n);
        assert!(n <= hs_norm(&a) * (1.0 + 1e-12));
        let max_entry = a.triplets().map(|(_, _, v)| v.norm()).fold(0.0, f64::max);
        assert!(max_entry <= n * (1.0 + 1e-12));
    }
}

#[test]
fn submultiplicativity() {
    for seed in 0..30 {
        let a = rng::random_matrix(12, 9, seed);
        let b = rng::random_matrix(9, 15, seed + 1000);
        let ab = exact_norm(&a.mul(&b).unwrap()).unwrap().value;
        assert!(ab <= exact_norm(&a).unwrap().value * exact_norm(&b).unwrap().value * (1.0 + 1e-12));
    }
}

#[test]
fn power_iteration_brackets_exact() {
    let tol = 1e-6;
    for seed in 0..40 {
        let a = rng::random_matrix(20 + seed as usize, 25, seed);
        let exact = exact_norm(&a).unwrap().value;
        let power = power_iteration_norm(&a, &NormOptions::with_tol(tol)).unwrap().value;
        assert!(power <= exact * (1.0 + tol), "seed {seed}: {power} > {exact}");
        assert!(power >= exact * (1.0 - tol), "seed {seed}: {power} < {exact}");
    }
    // also on an operator with a small spectral gap
    let f = SphereFunction::sphere_indicator(free2(), 1).unwrap();
    let t = truncated_lambda(&f, 5).unwrap().matrix;
    let exact = exact_norm(&t).unwrap().value;
    let power = power_iteration_norm(&t, &NormOptions::with_tol(tol)).unwrap().value;
    assert!(power <= exact * (1.0 + tol) && power >= exact * (1.0 - tol), "{power} vs {exact}");
}

#[test]
fn json_round_trips() {
    let a = rng::random_matrix(6, 4, 3);
    assert_eq!(ComplexMatrix::from_json(&a.to_json()).unwrap(), a);
    let f = SphereFunction::random(zfp(), 3, 2, 0.5, 8).unwrap();
    assert_eq!(SphereFunction::from_json(&f.to_json()).unwrap(), f);
}
