mod common;

use common::*;
use dqcalc::algebra::BiPoly;
use dqcalc::leibniz::{apply_expansion, leibniz_terms};
use dqcalc::multifactor::{
    alternating_binomial_sum, binomial_sum, check_multiplicativity, egf_check, egf_pair,
    forward_binomial, inverse_binomial, multi_delta, translation_pow_expanded, FactorList,
};
use dqcalc::operators::{delta, delta_pow, translation_pow};
use dqcalc::random::{campaign_rng, PolySampler};
use proptest::prelude::*;

fn product(fs: &[BiPoly]) -> BiPoly {
    fs.iter().fold(BiPoly::one(), |acc, f| naive_mul(&acc, f))
}

fn random_list(s: &PolySampler, rng: &mut dqcalc::random::CampaignRng, n: usize) -> FactorList {
    FactorList::new(s.sample_many(rng, n)).unwrap()
}

#[test]
fn multiplicativity_by_substitution() {
    let s = PolySampler::default().with_max_deg_x(4);
    let mut rng = campaign_rng(71);
    for trial in 0..20 {
        let fs = random_list(&s, &mut rng, 3);
        let r = trial % 5;
        assert!(check_multiplicativity(&fs, r));
        let lhs = substitute_shift(&product(fs.factors()), r as i64);
        let rhs = product(
            &fs.factors()
                .iter()
                .map(|f| substitute_shift(f, r as i64))
                .collect::<Vec<_>>(),
        );
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn displayed_order_one_three_factors() {
    let s = PolySampler::default().with_max_deg_x(4);
    let mut rng = campaign_rng(72);
    for _ in 0..20 {
        let fs = random_list(&s, &mut rng, 3);
        let [f1, f2, f3] = fs.factors() else { unreachable!() };
        let lifted: Vec<BiPoly> = [f1, f2, f3]
            .iter()
            .map(|f| *f + &delta(f).mul_lambda_pow(1))
            .collect();
        let bracket = &product(&lifted) - &product(&[f1.clone(), f2.clone(), f3.clone()]);
        let displayed = bracket.divide_by_lambda().unwrap();
        assert_eq!(multi_delta(&fs, 1).unwrap(), displayed);
    }
}

#[test]
fn displayed_order_two_three_factors() {
    let s = PolySampler::default().with_max_deg_x(4);
    let mut rng = campaign_rng(73);
    for _ in 0..20 {
        let fs = random_list(&s, &mut rng, 3);
        let twice: Vec<BiPoly> = fs
            .factors()
            .iter()
            .map(|f| {
                let d1 = delta(f);
                let d2 = delta(&d1);
                &(f + &d1.mul_lambda_pow(1).scale(&q(2, 1))) + &d2.mul_lambda_pow(2)
            })
            .collect();
        let once: Vec<BiPoly> = fs
            .factors()
            .iter()
            .map(|f| f + &delta(f).mul_lambda_pow(1))
            .collect();
        let bracket = &(&product(&twice) - &product(&once).scale(&q(2, 1))) + &product(fs.factors());
        let displayed = bracket.divide_by_lambda_pow(2).unwrap();
        assert_eq!(multi_delta(&fs, 2).unwrap(), displayed);
    }
}

#[test]
fn alternating_sum_matches_definition() {
    let s = PolySampler::default().with_max_deg_x(4);
    let mut rng = campaign_rng(74);
    for n in 1..=4 {
        for r in 1..=4u32 {
            for _ in 0..5 {
                let fs = random_list(&s, &mut rng, n);
                let p = product(fs.factors());
                assert_eq!(multi_delta(&fs, r).unwrap(), delta_pow(&p, r), "n={n} r={r}");
            }
        }
    }
}

#[test]
fn forward_and_inverse_random() {
    let s = PolySampler::default().with_max_deg_x(4);
    let mut rng = campaign_rng(75);
    for _ in 0..10 {
        let fs = random_list(&s, &mut rng, 2);
        let p = product(fs.factors());
        assert_eq!(forward_binomial(&fs, 3), delta_pow(&p, 3).mul_lambda_pow(3));
        assert_eq!(inverse_binomial(&fs, 4), translation_pow(&p, 4));
    }
}

#[test]
fn inversion_round_trip() {
    let s = PolySampler::default().with_max_deg_x(4);
    let mut rng = campaign_rng(76);
    for _ in 0..10 {
        let fs = random_list(&s, &mut rng, 3);
        let p = product(fs.factors());
        for r in 0..=5u32 {
            let forward: Vec<BiPoly> = (0..=r).map(|k| forward_binomial(&fs, k)).collect();
            assert_eq!(binomial_sum(&forward), translation_pow(&p, r));
            let inverse: Vec<BiPoly> = (0..=r).map(|k| inverse_binomial(&fs, k)).collect();
            assert_eq!(alternating_binomial_sum(&inverse), delta_pow(&p, r).mul_lambda_pow(r));
        }
    }
}

#[test]
fn egf_pair_against_iterated_operators() {
    let s = PolySampler::default().with_max_deg_x(4);
    let mut rng = campaign_rng(77);
    for _ in 0..5 {
        let fs = random_list(&s, &mut rng, 2);
        let p = product(fs.factors());
        let (a, abar) = egf_pair(&fs, 6);
        assert_eq!(a.order(), 6);
        for r in 0..=6u32 {
            assert_eq!(a.coeffs()[r as usize], delta_pow(&p, r).mul_lambda_pow(r));
            assert_eq!(abar.coeffs()[r as usize], substitute_shift(&p, r as i64));
        }
        assert!(egf_check(&a, &abar).unwrap());
    }
}

#[test]
fn egf_check_detects_corruption() {
    let fs = FactorList::new(vec![BiPoly::x().pow(3), BiPoly::x() + BiPoly::lambda()]).unwrap();
    let (a, abar) = egf_pair(&fs, 4);
    let mut coeffs = abar.coeffs().to_vec();
    coeffs[3] = &coeffs[3] + &BiPoly::lambda();
    let broken = dqcalc::multifactor::TruncatedSeries::new(coeffs);
    assert!(!egf_check(&a, &broken).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn expanded_translation_matches_iterated(f in poly_strategy(5, 2), k in 0u32..=6) {
        prop_assert_eq!(translation_pow_expanded(&f, k), translation_pow(&f, k));
    }

    #[test]
    fn two_factor_agreement(f in poly_strategy(4, 2), g in poly_strategy(4, 2), r in 1u32..=4) {
        let fs = FactorList::new(vec![f.clone(), g.clone()]).unwrap();
        prop_assert_eq!(
            multi_delta(&fs, r).unwrap(),
            apply_expansion(&leibniz_terms(r).unwrap(), &f, &g)
        );
    }
}
