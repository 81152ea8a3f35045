mod common;

use common::*;
use dqcalc::algebra::BiPoly;
use dqcalc::operators::{delta, delta_pow, translation, translation_pow};
use dqcalc::random::{campaign_rng, PolySampler};
use proptest::prelude::*;

#[test]
fn cube_quotient_at_random_points() {
    let x3 = BiPoly::x().pow(3);
    let d = delta(&x3);
    let s = PolySampler::default();
    let mut rng = campaign_rng(9);
    let mut checked = 0;
    while checked < 20 {
        let x0 = s.coefficient(&mut rng);
        let l0 = s.coefficient(&mut rng);
        if l0 == q(0, 1) {
            continue;
        }
        assert_eq!(d.eval(&x0, &l0), delta_at(&x3, &x0, &l0));
        checked += 1;
    }
}

#[test]
fn second_quotient_of_cube() {
    let x0 = q(2, 3);
    let l0 = q(-5, 7);
    let d2 = delta_pow(&BiPoly::x().pow(3), 2);
    assert_eq!(d2.eval(&x0, &l0), delta_pow_at(&BiPoly::x().pow(3), 2, &x0, &l0));
    assert_eq!(d2, BiPoly::from(6) * BiPoly::x() + BiPoly::from(6) * BiPoly::lambda());
}

#[test]
fn translation_pow_of_square_by_substitution() {
    let x2 = BiPoly::x().pow(2);
    assert_eq!(translation_pow(&x2, 3), substitute_shift(&x2, 3));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linearity(
        p in poly_strategy(6, 2),
        r in poly_strategy(6, 2),
        a in rational_strategy(),
        b in rational_strategy(),
    ) {
        let combo = &p.scale(&a) + &r.scale(&b);
        prop_assert_eq!(delta(&combo), &delta(&p).scale(&a) + &delta(&r).scale(&b));
    }

    #[test]
    fn quotient_matches_definition_pointwise(
        p in poly_strategy(6, 2),
        x0 in rational_strategy(),
        l0 in nonzero_rational_strategy(),
        r in 0u32..4,
    ) {
        prop_assert_eq!(delta_pow(&p, r).eval(&x0, &l0), delta_pow_at(&p, r, &x0, &l0));
    }

    #[test]
    fn shift_law(p in poly_strategy(5, 2), k in 0u32..=6) {
        prop_assert_eq!(translation_pow(&p, k), substitute_shift(&p, k as i64));
    }

    #[test]
    fn translation_is_shift(p in poly_strategy(7, 3)) {
        prop_assert_eq!(translation(&p), p.shift_x());
    }

    #[test]
    fn reconstruction(p in poly_strategy(7, 3)) {
        let back = (&translation(&p) - &p).divide_by_lambda().unwrap();
        prop_assert_eq!(delta(&p), back);
    }

    #[test]
    fn degree_law(p in poly_strategy(8, 2)) {
        if let Some(d) = p.deg_x() {
            if d >= 1 {
                prop_assert_eq!(delta(&p).deg_x(), Some(d - 1));
            } else {
                prop_assert!(delta(&p).is_zero());
            }
        }
    }

    #[test]
    fn classical_limit_of_powers(p in poly_strategy(8, 0), r in 0u32..=6) {
        prop_assert_eq!(delta_pow(&p, r).subst_lambda_zero(), p.derivative_x(r));
    }

    #[test]
    fn classical_limit_with_lambda_terms(p in poly_strategy(8, 2), r in 0u32..=6) {
        prop_assert_eq!(
            delta_pow(&p, r).subst_lambda_zero(),
            p.subst_lambda_zero().derivative_x(r)
        );
    }
}
