//! Algebraic invariants on seeded random inputs.

use std::sync::Arc;

use lieverma::enveloping::{BasisIndex, Enveloping, SwapSchedule};
use lieverma::root_system::{CartanType, Weight};
use lieverma::sampling::{random_deformed_element, random_element, random_word, rng};
use lieverma::scalar::{certify_convergence, q, q_frac, valuation, CoeffSite, GaugeStaircase, Val};
use lieverma::verma::VermaModule;
use proptest::prelude::*;

fn algebra(t: CartanType) -> Arc<Enveloping> {
    Enveloping::of_type(t, 5).unwrap()
}

fn cartan_type() -> impl Strategy<Value = CartanType> {
    prop_oneof![Just(CartanType::A1), Just(CartanType::A2), Just(CartanType::B2), Just(CartanType::G2)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pbw_straightening_is_confluent(t in cartan_type(), seed in any::<u64>()) {
        let alg = algebra(t);
        let lay = alg.layout();
        let mut r = rng(seed);
        let word: Vec<BasisIndex> = random_word(&mut r, alg.dim(), 6).into_iter().map(|i| lay.basis(i)).collect();
        let left = alg.pbw_normalize(&word, q(1), SwapSchedule::LeftmostFirst);
        let right = alg.pbw_normalize(&word, q(1), SwapSchedule::RightmostFirst);
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left, alg.word(&word));
    }

    #[test]
    fn multiplication_is_associative(t in cartan_type(), seed in any::<u64>()) {
        let alg = algebra(t);
        let mut r = rng(seed);
        let a = random_element(&alg, &mut r, 2, 3);
        let b = random_element(&alg, &mut r, 2, 3);
        let c = random_element(&alg, &mut r, 2, 2);
        prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &c), alg.mul(&a, &alg.mul(&b, &c)));
    }

    #[test]
    fn involutions_reverse_products(t in cartan_type(), seed in any::<u64>()) {
        let alg = algebra(t);
        let mut r = rng(seed);
        let a = random_element(&alg, &mut r, 3, 3);
        let b = random_element(&alg, &mut r, 3, 3);
        let ab = alg.mul(&a, &b);
        prop_assert_eq!(alg.sigma(&ab), alg.mul(&alg.sigma(&b), &alg.sigma(&a)));
        prop_assert_eq!(alg.tau(&ab), alg.mul(&alg.tau(&b), &alg.tau(&a)));
        prop_assert_eq!(alg.sigma(&alg.sigma(&a)), a.clone());
        prop_assert_eq!(alg.tau(&alg.tau(&a)), a);
    }

    #[test]
    fn adjoint_action_is_multiplicative(t in cartan_type(), seed in any::<u64>(), k in 0usize..6, r_num in -3i64..=3) {
        let alg = algebra(t);
        let k = k % alg.root_system().num_positive();
        let mut g = rng(seed);
        let a = random_element(&alg, &mut g, 2, 2);
        let b = random_element(&alg, &mut g, 2, 2);
        let r = q(r_num);
        let lhs = alg.adjoint_group_action(k, &r, &alg.mul(&a, &b)).unwrap();
        let rhs = alg.mul(&alg.adjoint_group_action(k, &r, &a).unwrap(), &alg.adjoint_group_action(k, &r, &b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gauge_is_submultiplicative(t in cartan_type(), seed in any::<u64>(), n in 0u32..=2, na in 0u32..=1, nb in 0u32..=1) {
        let alg = algebra(t);
        let mut g = rng(seed);
        let a = random_deformed_element(&alg, &mut g, 3, 3, na).scaled(&q_frac(1, 5));
        let b = random_deformed_element(&alg, &mut g, 3, 3, nb);
        prop_assert!(alg.gauge(&alg.mul(&a, &b), n) >= alg.gauge(&a, n) + alg.gauge(&b, n));
    }

    #[test]
    fn valuation_is_ultrametric(a in -500i64..500, b in -500i64..500, da in 1i64..60, db in 1i64..60) {
        let x = q_frac(a, da);
        let y = q_frac(b, db);
        let vx = valuation(&x, 5);
        let vy = valuation(&y, 5);
        prop_assert!(valuation(&(&x + &y), 5) >= vx.min(vy));
        prop_assert_eq!(valuation(&(&x * &y), 5), vx + vy);
    }

    #[test]
    fn loosening_never_breaks_certification(offset in -2i64..3, slope in 1i64..4, by in 0i64..4, coeffs in proptest::collection::vec((0u32..10, -2000i64..2000), 1..12)) {
        let st = GaugeStaircase::linear(slope, offset).unwrap();
        let loose = st.loosened(by);
        prop_assert!(loose.is_looser_than(&st, 20));
        let values: Vec<_> = coeffs.iter().map(|(h, c)| (*h, q(*c))).collect();
        let sites = || values.iter().map(|(h, c)| CoeffSite { height: *h, degree: *h, coeff: c });
        if certify_convergence(sites(), 1, 5, &st).is_ok() {
            prop_assert!(certify_convergence(sites(), 1, 5, &loose).is_ok());
        }
        for h in 0..20 {
            prop_assert!(st.value_at(h + 1) >= st.value_at(h));
        }
    }

    #[test]
    fn height_bounds_degree(t in cartan_type()) {
        let alg = algebra(t);
        let mh = alg.root_system().max_root_height() as u32;
        let m = VermaModule::new(alg, Weight::zero(t.rank()), 6).unwrap();
        for b in m.weight_spaces().values().flatten() {
            let deg = VermaModule::degree(b);
            prop_assert!(deg <= m.height(b) && m.height(b) <= mh * deg);
        }
    }
}

#[test]
fn zero_has_infinite_gauge() {
    let alg = algebra(CartanType::A1);
    assert_eq!(alg.gauge(&lieverma::enveloping::UEAElement::zero(), 1), Val::Infinite);
}
