use balanced_words::asympt::{critical_point, pemantle_estimate, Direction};
use balanced_words::graphwords::{count_balanced_paths, enumerate_paths, kron_transfer, TwoColoredGraph};
use balanced_words::monodromy::{generated_group, Permutation};
use balanced_words::poly::{roots, PolyInstance, DEFAULT_ROOT_TOL};
use balanced_words::transfer::{build_m, is_unimodular, StepKind};
use balanced_words::words::{
    count_balanced_dp, count_unconstrained, enumerate_balanced, is_balanced, jmax, prolong, psi, reproject,
    sample_balanced, Alpha, BalanceSpec,
};
use num_bigint::BigUint;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn slope() -> impl Strategy<Value = (u64, u64)> {
    prop::sample::select(vec![(1u64, 2u64), (1, 3), (2, 3), (2, 5), (3, 5), (3, 7), (1, 4), (5, 8)])
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dp_matches_enumeration((p, q) in slope(), r in 1u32..4, n in 0usize..13) {
        let spec = BalanceSpec::new(p, q, r).unwrap();
        let brute = enumerate_balanced(n, &spec).unwrap();
        prop_assert_eq!(count_balanced_dp(n, &spec).total(), BigUint::from(brute.len()));
        prop_assert!(count_balanced_dp(n, &spec).total() <= count_unconstrained(n, &spec));
    }

    #[test]
    fn samples_are_balanced((p, q) in slope(), r in 1u32..5, n in 0usize..60, seed: u64) {
        let spec = BalanceSpec::new(p, q, r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = sample_balanced(n, &spec, &mut rng);
        prop_assert_eq!(w.len(), n);
        prop_assert!(is_balanced(&w, &spec));
        let mut longer = w.clone();
        longer.push(prolong(&w, &spec).unwrap());
        prop_assert!(is_balanced(&longer, &spec));
    }

    #[test]
    fn reprojection_invariants(r in 1u32..5, n in 1usize..50, seed: u64) {
        let (a, b) = (Alpha::new(2, 5), Alpha::new(1, 2));
        let src = BalanceSpec::from_alpha(a, r).unwrap();
        let dst = BalanceSpec::from_alpha(b, r).unwrap();
        let w = sample_balanced(n, &src, &mut ChaCha8Rng::seed_from_u64(seed));
        let out = reproject(&w, a, b, r).unwrap();
        prop_assert!(out.is_zero_insertion_of(&w));
        prop_assert!(is_balanced(&out, &dst));
        prop_assert!(out.len() - n <= jmax(n, a, b).unwrap() as usize);
        let full = psi(&w, a, b, r).unwrap();
        prop_assert_eq!(full.len(), n + jmax(n, a, b).unwrap() as usize);
        prop_assert!(is_balanced(&full, &dst));
    }

    #[test]
    fn transfer_is_unimodular((p, q) in slope(), r in 1u32..6) {
        prop_assert!(is_unimodular(&build_m(p, q, r).unwrap()));
    }

    #[test]
    fn permutation_laws(a in perm(6), b in perm(6), c in perm(6)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert_eq!(a.then(&b).inverse(), b.inverse().then(&a.inverse()));
        prop_assert!(a.power(a.order() as usize).is_identity());
    }

    #[test]
    fn group_order_divides_factorial(a in perm(5), b in perm(5)) {
        let g = generated_group(&[a, b], 5).unwrap();
        prop_assert_eq!(BigUint::from(120u32) % &g.order, BigUint::from(0u32));
    }

    #[test]
    fn roots_have_small_residuals(n in 2u32..20, p_frac in 0.0f64..1.0, re in -50.0f64..50.0, im in -50.0f64..50.0) {
        let p = 1 + ((n - 1) as f64 * p_frac) as u32;
        prop_assume!(p < n && (re, im) != (0.0, 0.0));
        let inst = PolyInstance::new(n, p, Complex64::new(re, im)).unwrap();
        if let Ok(set) = roots(&inst, DEFAULT_ROOT_TOL) {
            prop_assert_eq!(set.roots.len(), n as usize);
            prop_assert!(set.max_residual() <= DEFAULT_ROOT_TOL);
        } else {
            // Only near-collisions are allowed to fail.
            let exact = roots(&inst, 1e-6).unwrap();
            prop_assert!(exact.clustered);
        }
    }

    #[test]
    fn saddle_point_is_exact(r in 1u64..500, s in 1u64..500) {
        let dir = Direction::new(r, s).unwrap();
        let c = critical_point(dir);
        prop_assert!(c.d_residual < 1e-14 && c.direction_residual < 1e-14);
        let est = pemantle_estimate(dir).unwrap();
        prop_assert!(est.q > 0.0 && est.rel_error < 0.2);
    }

    #[test]
    fn graph_dp_matches_paths(
        zero in prop::collection::vec(0u64..2, 9),
        one in prop::collection::vec(0u64..2, 9),
        v in 1usize..4,
        (p, q) in slope(),
        r in 1u32..3,
        n in 0usize..8,
    ) {
        let mat = |e: &[u64]| (0..v).map(|i| e[i * 3..i * 3 + v].to_vec()).collect::<Vec<_>>();
        let g = TwoColoredGraph::new(mat(&zero), mat(&one)).unwrap();
        let spec = BalanceSpec::new(p, q, r).unwrap();
        let start: Vec<usize> = (0..v).collect();
        prop_assert_eq!(
            count_balanced_paths(&g, n, &spec, &start).unwrap().total(),
            enumerate_paths(&g, n, &spec, &start).unwrap()
        );
        let dim = 2 * r as usize * v;
        prop_assert_eq!(kron_transfer(&g, r, StepKind::Increment).dim(), dim);
        let text = g.to_string();
        prop_assert_eq!(text.parse::<TwoColoredGraph>().unwrap(), g);
    }
}
