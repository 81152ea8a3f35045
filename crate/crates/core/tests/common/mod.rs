//! Independent oracles. Nothing here calls `shift_x`, `delta`, `BiPoly`
//! multiplication or the closed forms under test.

#![allow(dead_code)]

use std::collections::BTreeMap;

use dqcalc::algebra::{BiPoly, Monomial, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `C(n, k)` by filling Pascal's triangle row by row.
pub fn pascal_binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row[k].clone()
}

/// Coefficient convolution with an explicit double loop.
pub fn naive_mul(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let mut acc: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let key = (ma.x + mb.x, ma.lambda + mb.lambda);
            let entry = acc.entry(key).or_insert_with(Rational::zero);
            *entry += ca * cb;
        }
    }
    BiPoly::from_terms(acc.into_iter().map(|((i, j), c)| (Monomial::new(i, j), c)))
}

pub fn naive_add(a: &BiPoly, b: &BiPoly) -> BiPoly {
    BiPoly::from_terms(a.terms().chain(b.terms()).map(|(m, c)| (*m, c.clone())))
}

fn rat_pow(base: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

/// Sum over monomials with powers by repeated multiplication.
pub fn naive_eval(p: &BiPoly, x0: &Rational, l0: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for (m, c) in p.terms() {
        acc += c * rat_pow(x0, m.x) * rat_pow(l0, m.lambda);
    }
    acc
}

/// `p(x + c·l, l)` by expanding `(x + c·l)^i` with repeated convolution.
pub fn substitute_shift(p: &BiPoly, c: i64) -> BiPoly {
    let base = BiPoly::from_terms([
        (Monomial::new(1, 0), q(1, 1)),
        (Monomial::new(0, 1), q(c, 1)),
    ]);
    let mut out = BiPoly::zero();
    for (m, coeff) in p.terms() {
        let mut pw = BiPoly::one();
        for _ in 0..m.x {
            pw = naive_mul(&pw, &base);
        }
        let lam = BiPoly::monomial(coeff.clone(), 0, m.lambda);
        out = naive_add(&out, &naive_mul(&pw, &lam));
    }
    out
}

/// `(p(x0 + l0, l0) - p(x0, l0)) / l0`, the defining quotient at a point.
pub fn delta_at(p: &BiPoly, x0: &Rational, l0: &Rational) -> Rational {
    (naive_eval(p, &(x0 + l0), l0) - naive_eval(p, x0, l0)) / l0
}

/// `δ^r p` at a point, recursing on the defining quotient.
pub fn delta_pow_at(p: &BiPoly, r: u32, x0: &Rational, l0: &Rational) -> Rational {
    if r == 0 {
        return naive_eval(p, x0, l0);
    }
    (delta_pow_at(p, r - 1, &(x0 + l0), l0) - delta_pow_at(p, r - 1, x0, l0)) / l0
}

/// Symbolic two-factor expansion keyed by `(order_f, order_g)` with value
/// `(lambda_exp, coeff)`, advanced by applying the product rule to every
/// pair `(δ^a f)(δ^b g)` and collecting like terms.
pub type SymbolicExpansion = BTreeMap<(u32, u32), (u32, BigInt)>;

pub fn product_rule_step(e: &SymbolicExpansion) -> SymbolicExpansion {
    let mut out: SymbolicExpansion = BTreeMap::new();
    let mut push = |key: (u32, u32), lam: u32, c: &BigInt| {
        let entry = out.entry(key).or_insert((lam, BigInt::zero()));
        assert_eq!(entry.0, lam, "inconsistent l power at {key:?}");
        entry.1 += c;
    };
    for (&(a, b), (lam, c)) in e {
        push((a + 1, b + 1), lam + 1, c);
        push((a + 1, b), *lam, c);
        push((a, b + 1), *lam, c);
    }
    out
}

/// Order-`r` expansion obtained by `r` product-rule steps from `fg`.
pub fn symbolic_expansion(r: u32) -> SymbolicExpansion {
    let mut e: SymbolicExpansion = BTreeMap::new();
    e.insert((0, 0), (0, BigInt::one()));
    for _ in 0..r {
        e = product_rule_step(&e);
    }
    e
}

pub fn poly_strategy(max_deg_x: u32, max_deg_lambda: u32) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(
        (0..=max_deg_x, 0..=max_deg_lambda, -20i64..=20, 1i64..=10),
        0..8,
    )
    .prop_map(|terms| {
        BiPoly::from_terms(
            terms
                .into_iter()
                .map(|(i, j, a, b)| (Monomial::new(i, j), q(a, b))),
        )
    })
}

pub fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(a, b)| q(a, b))
}

pub fn nonzero_rational_strategy() -> impl Strategy<Value = Rational> {
    rational_strategy().prop_filter("nonzero", |r| !r.is_zero())
}
