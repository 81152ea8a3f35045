//! Exact and floating-point calculus of the forward difference quotient
//! `δ f(x) = (f(x + l) - f(x)) / l` and the translation `L = I + l·δ`.
//!
//! Polynomials live in `Q[x, l]` with the step `l` kept symbolic, so every
//! identity (two-factor and n-factor Leibniz rules, binomial inversion,
//! the EGF relation) is checked as exact polynomial equality. The
//! [`numeric`] module evaluates the same identities in `f64` on grids.

pub mod algebra;
pub mod campaign;
pub mod cli;
pub mod error;
pub mod leibniz;
pub mod multifactor;
pub mod numeric;
pub mod operators;
pub mod parse;
pub mod random;

pub use algebra::{binom, BiPoly, Monomial, Rational};
pub use error::{Error, Result};
pub use leibniz::{apply_expansion, classical_limit_check, leibniz_terms, product_rule, LeibnizExpansion, LeibnizTerm};
pub use multifactor::{
    check_multiplicativity, egf_check, egf_pair, forward_binomial, inverse_binomial, multi_delta,
    translation_pow_expanded, FactorList, TruncatedSeries,
};
pub use operators::{delta, delta_pow, translation, translation_pow, OperatorOrder};
pub use parse::{parse_poly, ParseError};
