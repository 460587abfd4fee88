use noether_core::jordan::{Algebra, JordanElement};
use noether_core::noether::{noether_check, DEFAULT_T_SAMPLES};
use noether_core::poisson::{poisson_bracket, Polynomial};
use noether_core::random::{random_element, trial_rng};
use noether_core::reconstruction::{
    complex_mul, star, ComplexStarElement, DynamicalCorrespondence,
};
use noether_core::spectral::{eigenvalues, exp, jb_norm};
use noether_core::states::{gibbs_state, partition_function, State};
use proptest::prelude::*;

fn algebra() -> impl Strategy<Value = Algebra> {
    prop_oneof![
        (1usize..=4).prop_map(Algebra::herm_r),
        (1usize..=3).prop_map(Algebra::herm_c),
        (1usize..=3).prop_map(Algebra::herm_h),
        (1usize..=6).prop_map(Algebra::spin),
        Just("albert".parse().unwrap()),
        Just("hermC:2+spin:3".parse().unwrap()),
    ]
}

fn elements<const K: usize>(alg: &Algebra, seed: u64) -> [JordanElement; K] {
    let mut rng = trial_rng(seed, 0);
    std::array::from_fn(|_| random_element(alg, &mut rng))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jordan_identity(alg in algebra(), seed: u64) {
        let [a, b] = elements(&alg, seed);
        let a2 = a.square();
        let lhs = a.circ(&b).circ(&a2);
        let rhs = a.circ(&b.circ(&a2));
        prop_assert!((&lhs - &rhs).max_abs() < 1e-9 * (1.0 + a.max_abs()).powi(3) * (1.0 + b.max_abs()));
    }

    #[test]
    fn norm_of_square_is_square_of_norm(alg in algebra(), seed: u64) {
        let [a] = elements(&alg, seed);
        let n = jb_norm(&a);
        prop_assert!((jb_norm(&a.square()) - n * n).abs() < 1e-9 * (1.0 + n * n));
    }

    #[test]
    fn exp_is_positive_and_spectral(alg in algebra(), seed: u64) {
        let [a] = elements(&alg, seed);
        let mut want: Vec<f64> = eigenvalues(&a).iter().map(|l| l.exp()).collect();
        let mut got = eigenvalues(&exp(&a));
        want.sort_by(f64::total_cmp);
        got.sort_by(f64::total_cmp);
        for (w, g) in want.iter().zip(&got) {
            prop_assert!((w - g).abs() < 1e-8 * w.max(1.0));
        }
    }

    #[test]
    fn gibbs_states_are_normalized(n in 1usize..=3, seed: u64, beta in 0.0f64..3.0) {
        let alg = Algebra::herm_c(n);
        let [h, x] = elements(&alg, seed);
        let omega = State::trace_state(&alg);
        let g = gibbs_state(&omega, &h, beta).unwrap();
        prop_assert!((g.evaluate(&JordanElement::unit(&alg)).unwrap() - 1.0).abs() < 1e-12);
        // unit-trace normalization gives Z(0) = 1
        prop_assert!((partition_function(&omega, &h, 0.0).unwrap() - 1.0).abs() < 1e-12);
        let x2 = x.square();
        prop_assert!(g.evaluate(&x2).unwrap() >= -1e-12);
    }

    #[test]
    fn canonical_noether_is_consistent(n in 2usize..=3, seed: u64) {
        let alg = Algebra::herm_c(n);
        let psi = DynamicalCorrespondence::canonical(&alg).unwrap();
        let [a, b] = elements(&alg, seed);
        let r = noether_check(&a, &b, &psi, &DEFAULT_T_SAMPLES, 1e-8).unwrap();
        prop_assert!(r.consistent);
        let r = noether_check(&a, &a.polynomial(&[0.5, -1.0, 2.0]), &psi, &DEFAULT_T_SAMPLES, 1e-8).unwrap();
        prop_assert!(r.consistent && r.a_fixes_b && r.b_fixes_a);
    }

    #[test]
    fn star_reverses_products(n in 1usize..=3, seed: u64) {
        let alg = Algebra::herm_c(n);
        let psi = DynamicalCorrespondence::canonical(&alg).unwrap();
        let [a, b, c, d] = elements(&alg, seed);
        let x = ComplexStarElement::new(a, b).unwrap();
        let y = ComplexStarElement::new(c, d).unwrap();
        let lhs = star(&complex_mul(&x, &y, &psi).unwrap());
        let rhs = complex_mul(&star(&y), &star(&x), &psi).unwrap();
        prop_assert!((&lhs - &rhs).part_norm() < 1e-9 * (1.0 + x.part_norm() * y.part_norm()));
    }

    #[test]
    fn poisson_bracket_is_antisymmetric(n in 1usize..=3, seed: u64) {
        let mut rng = trial_rng(seed, 1);
        let f = Polynomial::random(n, 3, 4, &mut rng);
        let g = Polynomial::random(n, 3, 4, &mut rng);
        let fg = poisson_bracket(&f, &g).unwrap();
        let gf = poisson_bracket(&g, &f).unwrap();
        prop_assert!(fg.checked_add(&gf).unwrap().is_zero());
    }
}
