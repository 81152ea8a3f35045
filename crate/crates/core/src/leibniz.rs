//! Two-factor product rules for the difference quotient.
//!
//! For `r >= 1`,
//!
//! ```text
//! δ^r(fg) = Σ_{l=0..r} l^(r-l) C(r,l) Σ_{k=0..l} C(l,k) (δ^(r-k) f)(δ^(k+r-l) g)
//! ```
//!
//! The map `(l, k) -> (r - k, k + r - l)` is injective, so every summand
//! lands on its own pair of δ-orders and no like-term collection is needed.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{binom, BiPoly, PascalRows};
use crate::error::{Error, Result};
use crate::operators::{delta, delta_pow, OperatorOrder};

/// One summand `coeff * l^lambda_exp * (δ^order_f f)(δ^order_g g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeibnizTerm {
    pub l: u32,
    pub k: u32,
    #[serde(serialize_with = "serialize_bigint")]
    pub coeff: BigInt,
    pub lambda_exp: u32,
    pub order_f: u32,
    pub order_g: u32,
}

fn serialize_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl LeibnizTerm {
    fn new(r: u32, l: u32, k: u32, pascal: &PascalRows) -> Self {
        LeibnizTerm {
            l,
            k,
            coeff: pascal.get(r, l) * pascal.get(l, k),
            lambda_exp: r - l,
            order_f: r - k,
            order_g: k + r - l,
        }
    }

    /// Recovers `(l, k)` from the δ-orders for order `r`.
    pub fn indices_from_orders(r: u32, order_f: u32, order_g: u32) -> Option<(u32, u32)> {
        let k = r.checked_sub(order_f)?;
        let l = (2 * r).checked_sub(order_f + order_g)?;
        (k <= l && l <= r).then_some((l, k))
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, order: u32, name: &str) -> fmt::Result {
    match order {
        0 => f.write_str(name),
        n => write!(f, "D^{n}[{name}]"),
    }
}

/// `c * l^e * D^a[f] * D^b[g]`, with zero exponents left out.
impl fmt::Display for LeibnizTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        if self.lambda_exp > 0 {
            write!(f, " * l^{}", self.lambda_exp)?;
        }
        f.write_str(" * ")?;
        write_factor(f, self.order_f, "f")?;
        f.write_str(" * ")?;
        write_factor(f, self.order_g, "g")
    }
}

/// Closed-form expansion of `δ^r(fg)`, terms sorted by `order_f` then
/// `order_g`, both descending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeibnizExpansion {
    pub r: u32,
    pub terms: Vec<LeibnizTerm>,
}

impl LeibnizExpansion {
    pub fn order(&self) -> OperatorOrder {
        OperatorOrder(self.r)
    }

    pub fn find(&self, order_f: u32, order_g: u32) -> Option<&LeibnizTerm> {
        self.terms
            .iter()
            .find(|t| t.order_f == order_f && t.order_g == order_g)
    }
}

impl fmt::Display for LeibnizExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.terms {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

/// `δ(fg) = l·δf·δg + δf·g + f·δg`.
pub fn product_rule(f: &BiPoly, g: &BiPoly) -> BiPoly {
    let df = delta(f);
    let dg = delta(g);
    let mut out = (&df * &dg).mul_lambda_pow(1);
    out += &(&df * g);
    out += &(f * &dg);
    out
}

pub fn leibniz_terms(r: impl Into<OperatorOrder>) -> Result<LeibnizExpansion> {
    let r = r.into().get();
    if r == 0 {
        return Err(Error::InvalidOrder(r));
    }
    let pascal = PascalRows::up_to(r);
    let mut terms: Vec<LeibnizTerm> = (0..=r)
        .flat_map(|l| (0..=l).map(move |k| (l, k)))
        .map(|(l, k)| LeibnizTerm::new(r, l, k, &pascal))
        .collect();
    terms.sort_by_key(|t| std::cmp::Reverse((t.order_f, t.order_g)));
    Ok(LeibnizExpansion { r, terms })
}

/// Evaluates the expansion on concrete `f` and `g`.
pub fn apply_expansion(e: &LeibnizExpansion, f: &BiPoly, g: &BiPoly) -> BiPoly {
    // δ^j f and δ^j g for j = 0..=r, computed once
    let powers = |p: &BiPoly| -> Vec<BiPoly> {
        let mut v = Vec::with_capacity(e.r as usize + 1);
        v.push(p.clone());
        for j in 0..e.r as usize {
            let next = delta(&v[j]);
            v.push(next);
        }
        v
    };
    let df = powers(f);
    let dg = powers(g);
    let mut out = BiPoly::zero();
    for t in &e.terms {
        let a = &df[t.order_f as usize];
        let b = &dg[t.order_g as usize];
        if a.is_zero() || b.is_zero() {
            continue;
        }
        out += &(a * b).scale_int(&t.coeff).mul_lambda_pow(t.lambda_exp);
    }
    out
}

/// Checks that the expansion collapses to `Σ C(r,k) f^(r-k) g^(k)` at `l = 0`.
pub fn classical_limit_check(f: &BiPoly, g: &BiPoly, r: impl Into<OperatorOrder>) -> Result<bool> {
    let r = r.into().get();
    if !f.is_lambda_free() || !g.is_lambda_free() {
        return Err(Error::LambdaContaminated);
    }
    let lhs = apply_expansion(&leibniz_terms(r)?, f, g).subst_lambda_zero();
    let rhs: BiPoly = (0..=r)
        .map(|k| (f.derivative_x(r - k) * g.derivative_x(k)).scale_int(&binom(r, k)))
        .sum();
    Ok(lhs == rhs)
}

/// Left-hand side `δ^r(fg)` computed by iterating the definition.
pub fn delta_pow_of_product(f: &BiPoly, g: &BiPoly, r: impl Into<OperatorOrder>) -> BiPoly {
    delta_pow(&(f * g), r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> BiPoly {
        BiPoly::x()
    }

    fn l() -> BiPoly {
        BiPoly::lambda()
    }

    fn c(n: i64) -> BiPoly {
        BiPoly::from(n)
    }

    #[test]
    fn product_rule_examples() {
        assert_eq!(product_rule(&x(), &x()), c(2) * x() + l());
        let p = x().pow(3) - c(4) * l() * x();
        assert_eq!(product_rule(&BiPoly::one(), &p), delta(&p));
    }

    #[test]
    fn order_one_is_product_rule() {
        let e = leibniz_terms(1).unwrap();
        let summary: Vec<_> = e
            .terms
            .iter()
            .map(|t| (t.coeff.clone(), t.lambda_exp, t.order_f, t.order_g))
            .collect();
        assert_eq!(
            summary,
            vec![
                (BigInt::from(1), 1, 1, 1),
                (BigInt::from(1), 0, 1, 0),
                (BigInt::from(1), 0, 0, 1),
            ]
        );
    }

    #[test]
    fn order_zero_is_rejected() {
        assert_eq!(leibniz_terms(0), Err(Error::InvalidOrder(0)));
    }

    #[test]
    fn term_counts() {
        for r in 1..=10u32 {
            let e = leibniz_terms(r).unwrap();
            assert_eq!(e.terms.len() as u32, (r + 1) * (r + 2) / 2);
        }
        assert_eq!(leibniz_terms(4).unwrap().terms.len(), 15);
    }

    #[test]
    fn orders_determine_indices() {
        for r in 1..=8u32 {
            for t in leibniz_terms(r).unwrap().terms {
                assert_eq!(
                    LeibnizTerm::indices_from_orders(r, t.order_f, t.order_g),
                    Some((t.l, t.k))
                );
                assert!(t.coeff >= BigInt::from(1));
            }
        }
    }

    #[test]
    fn apply_examples() {
        let e1 = leibniz_terms(1).unwrap();
        assert_eq!(apply_expansion(&e1, &x(), &x()), c(2) * x() + l());
        let e2 = leibniz_terms(2).unwrap();
        assert_eq!(
            apply_expansion(&e2, &x().pow(2), &x()),
            c(6) * x() + c(6) * l()
        );
    }

    #[test]
    fn classical_limit_examples() {
        assert!(classical_limit_check(&x().pow(2), &x().pow(3), 2).unwrap());
        assert!(classical_limit_check(&BiPoly::one(), &(x().pow(4) - c(3)), 3).unwrap());
        assert_eq!(
            classical_limit_check(&l(), &x(), 1),
            Err(Error::LambdaContaminated)
        );
    }

    #[test]
    fn rendering() {
        let text = leibniz_terms(2).unwrap().to_string();
        assert_eq!(
            text,
            "1 * l^2 * D^2[f] * D^2[g]\n\
             2 * l^1 * D^2[f] * D^1[g]\n\
             1 * D^2[f] * g\n\
             2 * l^1 * D^1[f] * D^2[g]\n\
             2 * D^1[f] * D^1[g]\n\
             1 * f * D^2[g]\n"
        );
    }
}
