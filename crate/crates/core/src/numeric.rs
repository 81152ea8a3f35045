//! Floating-point evaluation of the difference-quotient identities on a
//! closed catalog of real functions, with error and cancellation metrics.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::{binom, BiPoly, Monomial};
use crate::error::{Error, Result};
use crate::leibniz::leibniz_terms;
use crate::operators::OperatorOrder;

/// Denominator floor for relative errors and cancellation ratios.
pub const REL_FLOOR: f64 = 1e-300;

/// Tolerance that holds for `|lambda| >= 0.05`, `r <= 4`, `|x| <= 4`.
pub const DEFAULT_TOL: f64 = 1e-9;

pub trait RealFn {
    fn eval(&self, x: f64) -> f64;
}

impl<T: RealFn + ?Sized> RealFn for &T {
    fn eval(&self, x: f64) -> f64 {
        (**self).eval(x)
    }
}

/// Catalog of real functions accepted by the numeric backend.
#[derive(Debug, Clone, PartialEq)]
pub enum NumericFn {
    Exp,
    Sin,
    Cos,
    /// `c_0 + c_1 x + … + c_d x^d`
    Poly(Vec<f64>),
    /// `1 / (x + a)`
    ReciprocalShifted(f64),
}

impl NumericFn {
    /// The point where the function is undefined, if any.
    pub fn singularity(&self) -> Option<f64> {
        match self {
            NumericFn::ReciprocalShifted(a) => Some(-a),
            _ => None,
        }
    }

    /// Exact polynomial for catalog polynomials; coefficients are converted
    /// from their binary values without rounding.
    pub fn to_bipoly(&self) -> Option<BiPoly> {
        let NumericFn::Poly(cs) = self else {
            return None;
        };
        let mut p = BiPoly::zero();
        for (i, c) in cs.iter().enumerate() {
            p.add_term(Monomial::new(i as u32, 0), BigRational::from_float(*c)?);
        }
        Some(p)
    }
}

impl RealFn for NumericFn {
    fn eval(&self, x: f64) -> f64 {
        match self {
            NumericFn::Exp => x.exp(),
            NumericFn::Sin => x.sin(),
            NumericFn::Cos => x.cos(),
            NumericFn::Poly(cs) => cs.iter().rev().fold(0.0, |acc, c| acc * x + c),
            NumericFn::ReciprocalShifted(a) => 1.0 / (x + a),
        }
    }
}

impl fmt::Display for NumericFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericFn::Exp => f.write_str("exp"),
            NumericFn::Sin => f.write_str("sin"),
            NumericFn::Cos => f.write_str("cos"),
            NumericFn::Poly(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                write!(f, "poly({})", parts.join(","))
            }
            NumericFn::ReciprocalShifted(a) => write!(f, "recip({a})"),
        }
    }
}

/// Accepts `exp`, `sin`, `cos`, `poly(c0,c1,…)` and `recip(a)`
/// (also spelled `reciprocal-shifted(a)`).
impl FromStr for NumericFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownFunction(s.to_string());
        let s_trim = s.trim();
        match s_trim {
            "exp" => return Ok(NumericFn::Exp),
            "sin" => return Ok(NumericFn::Sin),
            "cos" => return Ok(NumericFn::Cos),
            _ => {}
        }
        let (head, rest) = s_trim.split_once('(').ok_or_else(unknown)?;
        let args = rest.strip_suffix(')').ok_or_else(unknown)?;
        let nums: Vec<f64> = args
            .split(',')
            .map(|a| a.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| unknown())?;
        if nums.iter().any(|v| !v.is_finite()) {
            return Err(unknown());
        }
        match (head.trim(), nums.as_slice()) {
            ("poly", cs) if !cs.is_empty() => Ok(NumericFn::Poly(cs.to_vec())),
            ("recip" | "reciprocal-shifted", [a]) => Ok(NumericFn::ReciprocalShifted(*a)),
            _ => Err(unknown()),
        }
    }
}

/// `x ↦ (f(x + lambda) - f(x)) / lambda`.
#[derive(Debug, Clone)]
pub struct DifferenceQuotient<F> {
    inner: F,
    lambda: f64,
}

impl<F: RealFn> RealFn for DifferenceQuotient<F> {
    fn eval(&self, x: f64) -> f64 {
        (self.inner.eval(x + self.lambda) - self.inner.eval(x)) / self.lambda
    }
}

pub fn delta_num<F: RealFn>(f: F, lambda: f64) -> Result<DifferenceQuotient<F>> {
    if lambda == 0.0 {
        return Err(Error::ZeroLambda);
    }
    Ok(DifferenceQuotient { inner: f, lambda })
}

/// Pointwise product of catalog functions.
#[derive(Debug, Clone, Copy)]
pub struct Product<'a>(pub &'a [NumericFn]);

impl RealFn for Product<'_> {
    fn eval(&self, x: f64) -> f64 {
        self.0.iter().map(|f| f.eval(x)).product()
    }
}

/// `[δ^0 f(x), δ^1 f(x), …, δ^r f(x)]`, each level obtained from the one
/// below by the defining quotient.
pub fn delta_powers_at<F: RealFn>(f: &F, r: u32, lambda: f64, x: f64) -> Vec<f64> {
    let mut table: Vec<f64> = (0..=r).map(|j| f.eval(x + j as f64 * lambda)).collect();
    let mut out = Vec::with_capacity(r as usize + 1);
    out.push(table[0]);
    for level in 1..=r as usize {
        for j in 0..table.len() - level {
            table[j] = (table[j + 1] - table[j]) / lambda;
        }
        out.push(table[0]);
    }
    out
}

/// Uniform grid `x_start + i * step`, `i < count`, and the step `lambda` of
/// the difference quotient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    x_start: f64,
    step: f64,
    count: usize,
    lambda: f64,
}

impl GridSpec {
    pub fn new(x_start: f64, step: f64, count: usize, lambda: f64) -> Result<Self> {
        if lambda == 0.0 {
            return Err(Error::ZeroLambda);
        }
        if !step.is_finite() || step <= 0.0 {
            return Err(Error::InvalidGrid(format!("step must be positive, got {step}")));
        }
        if count == 0 {
            return Err(Error::InvalidGrid("count must be at least 1".into()));
        }
        if !x_start.is_finite() || !lambda.is_finite() {
            return Err(Error::InvalidGrid("grid parameters must be finite".into()));
        }
        Ok(GridSpec {
            x_start,
            step,
            count,
            lambda,
        })
    }

    /// `count` nodes spread evenly over `[a, b]`.
    pub fn over(a: f64, b: f64, count: usize, lambda: f64) -> Result<Self> {
        let step = if count > 1 { (b - a) / (count - 1) as f64 } else { 1.0 };
        GridSpec::new(a, step, count, lambda)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.x_start + i as f64 * self.step)
    }

    fn last(&self) -> f64 {
        self.x_start + (self.count - 1) as f64 * self.step
    }
}

/// A singular point may not lie within `max(10 |lambda| r, 2 (r + 1) |lambda|)`
/// of any sampled stencil point.
fn check_window(fs: &[NumericFn], r: u32, grid: &GridSpec) -> Result<()> {
    let reach = r as f64 * grid.lambda;
    let lo = grid.x_start + reach.min(0.0);
    let hi = grid.last() + reach.max(0.0);
    let margin = (10.0 * grid.lambda.abs() * r as f64).max(2.0 * (r + 1) as f64 * grid.lambda.abs());
    for f in fs {
        if let Some(s) = f.singularity() {
            let dist = if s < lo {
                lo - s
            } else if s > hi {
                s - hi
            } else {
                0.0
            };
            if dist < margin {
                return Err(Error::SingularityInWindow {
                    function: f.to_string(),
                    at: s,
                });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerificationReport {
    pub max_abs_err: f64,
    pub max_rel_err: f64,
    /// Max over the grid of `Σ |summand| / max(|sum|, REL_FLOOR)`.
    pub cancellation_ratio: f64,
    pub trials: u64,
    pub pass: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report fields are plain numbers")
    }
}

/// A floating-point sum with the bookkeeping needed for cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermSum {
    /// The value of the closed form.
    pub value: f64,
    /// `Σ |summand| / max(|Σ summand|, REL_FLOOR)`; at least 1 when the sum
    /// is nonzero.
    pub cancellation_ratio: f64,
}

impl TermSum {
    fn from_parts(value: f64, abs_sum: f64, raw_sum: f64) -> Self {
        TermSum {
            value,
            cancellation_ratio: abs_sum / raw_sum.abs().max(REL_FLOOR),
        }
    }
}

/// Precomputed `f64` view of a two-factor expansion.
#[derive(Debug, Clone)]
pub struct TwoFactorForm {
    r: u32,
    terms: Vec<(f64, i32, usize, usize)>,
}

impl TwoFactorForm {
    pub fn new(r: impl Into<OperatorOrder>) -> Result<Self> {
        let expansion = leibniz_terms(r)?;
        let terms = expansion
            .terms
            .iter()
            .map(|t| {
                (
                    t.coeff.to_f64().unwrap_or(f64::INFINITY),
                    t.lambda_exp as i32,
                    t.order_f as usize,
                    t.order_g as usize,
                )
            })
            .collect();
        Ok(TwoFactorForm { r: expansion.r, terms })
    }

    /// `Σ coeff l^e (δ^a f)(x) (δ^b g)(x)`.
    pub fn eval<F: RealFn, G: RealFn>(&self, f: &F, g: &G, lambda: f64, x: f64) -> TermSum {
        let df = delta_powers_at(f, self.r, lambda, x);
        let dg = delta_powers_at(g, self.r, lambda, x);
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        for &(c, e, a, b) in &self.terms {
            let term = c * lambda.powi(e) * df[a] * dg[b];
            sum += term;
            abs_sum += term.abs();
        }
        TermSum::from_parts(sum, abs_sum, sum)
    }
}

/// `l^-r Σ_k C(r,k) (-1)^(r-k) Π_i L^k f_i(x)` with
/// `L^k f_i = Σ_j C(k,j) l^j δ^j f_i`. The cancellation ratio is taken over
/// the alternating `k`-sum before the division by `l^r`.
pub fn multi_factor_sum_at(fs: &[NumericFn], r: u32, lambda: f64, x: f64) -> TermSum {
    let c = |n: u32, k: u32| binom(n, k).to_f64().unwrap_or(f64::INFINITY);
    let deltas: Vec<Vec<f64>> = fs
        .iter()
        .map(|f| delta_powers_at(f, r, lambda, x))
        .collect();
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    for k in 0..=r {
        let prod: f64 = deltas
            .iter()
            .map(|d| {
                (0..=k)
                    .map(|j| c(k, j) * lambda.powi(j as i32) * d[j as usize])
                    .sum::<f64>()
            })
            .product();
        let sign = if (r - k).is_multiple_of(2) { 1.0 } else { -1.0 };
        let term = sign * c(r, k) * prod;
        sum += term;
        abs_sum += term.abs();
    }
    TermSum::from_parts(sum / lambda.powi(r as i32), abs_sum, sum)
}

#[derive(Default)]
struct Accumulator {
    max_abs: f64,
    max_rel: f64,
    max_ratio: f64,
    trials: u64,
}

impl Accumulator {
    fn record(&mut self, lhs: f64, rhs: TermSum) {
        let abs = (lhs - rhs.value).abs();
        let rel = abs / lhs.abs().max(REL_FLOOR);
        // NaN compares false and would vanish from a plain max
        self.max_abs = nan_max(self.max_abs, abs);
        self.max_rel = nan_max(self.max_rel, rel);
        self.max_ratio = nan_max(self.max_ratio, rhs.cancellation_ratio);
        self.trials += 1;
    }

    fn finish(self, tol: f64) -> VerificationReport {
        VerificationReport {
            max_abs_err: self.max_abs,
            max_rel_err: self.max_rel,
            cancellation_ratio: self.max_ratio,
            trials: self.trials,
            pass: self.max_rel <= tol,
        }
    }
}

fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

fn check_order_and_tol(r: u32, tol: f64) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidOrder(r));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    Ok(())
}

/// Compares `δ^r(fg)` from the definition with the two-factor closed form at
/// every grid node.
pub fn verify_two_factor(
    f: &NumericFn,
    g: &NumericFn,
    r: impl Into<OperatorOrder>,
    grid: &GridSpec,
    tol: f64,
) -> Result<VerificationReport> {
    let r = r.into().get();
    check_order_and_tol(r, tol)?;
    let pair = [f.clone(), g.clone()];
    check_window(&pair, r, grid)?;
    let form = TwoFactorForm::new(r)?;
    let mut acc = Accumulator::default();
    for x in grid.nodes() {
        let lhs = delta_powers_at(&Product(&pair), r, grid.lambda, x)[r as usize];
        acc.record(lhs, form.eval(f, g, grid.lambda, x));
    }
    Ok(acc.finish(tol))
}

/// Compares `δ^r(f_1 ⋯ f_n)` from the definition with
/// [`multi_factor_sum_at`] at every grid node.
pub fn verify_multi_factor(
    fs: &[NumericFn],
    r: impl Into<OperatorOrder>,
    grid: &GridSpec,
    tol: f64,
) -> Result<VerificationReport> {
    let r = r.into().get();
    check_order_and_tol(r, tol)?;
    if fs.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    check_window(fs, r, grid)?;
    let mut acc = Accumulator::default();
    for x in grid.nodes() {
        let lhs = delta_powers_at(&Product(fs), r, grid.lambda, x)[r as usize];
        acc.record(lhs, multi_factor_sum_at(fs, r, grid.lambda, x));
    }
    Ok(acc.finish(tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_of_identity_is_one() {
        let id = NumericFn::Poly(vec![0.0, 1.0]);
        for lambda in [0.5, -0.25, 1e-3] {
            let d = delta_num(&id, lambda).unwrap();
            for x in [-3.0, 0.0, 1.7] {
                assert!((d.eval(x) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn delta_of_exp() {
        let d = delta_num(NumericFn::Exp, 0.1).unwrap();
        let expected = (0.1f64.exp() - 1.0) / 0.1;
        assert!((d.eval(0.0) - expected).abs() < 1e-15);
        assert!((d.eval(0.0) - 1.051_709_180_756_476_3).abs() < 1e-12);
    }

    #[test]
    fn zero_lambda_rejected() {
        assert!(matches!(delta_num(NumericFn::Sin, 0.0), Err(Error::ZeroLambda)));
        assert!(matches!(GridSpec::new(0.0, 0.1, 3, 0.0), Err(Error::ZeroLambda)));
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(0.0, 0.0, 3, 0.1).is_err());
        assert!(GridSpec::new(0.0, -1.0, 3, 0.1).is_err());
        assert!(GridSpec::new(0.0, 0.1, 0, 0.1).is_err());
        let g = GridSpec::over(0.0, 2.0, 64, 0.1).unwrap();
        let nodes: Vec<f64> = g.nodes().collect();
        assert_eq!(nodes.len(), 64);
        assert!((nodes[63] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn parses_catalog_names() {
        assert_eq!("exp".parse::<NumericFn>().unwrap(), NumericFn::Exp);
        assert_eq!(
            "poly(1, 0.5,-2)".parse::<NumericFn>().unwrap(),
            NumericFn::Poly(vec![1.0, 0.5, -2.0])
        );
        assert_eq!(
            "reciprocal-shifted(3)".parse::<NumericFn>().unwrap(),
            NumericFn::ReciprocalShifted(3.0)
        );
        for bad in ["tan", "poly()", "recip(1,2)", "poly(1", "poly(nan)"] {
            assert!(bad.parse::<NumericFn>().is_err(), "{bad}");
        }
        let p = NumericFn::Poly(vec![1.0, -0.5]);
        assert_eq!(p.to_string().parse::<NumericFn>().unwrap(), p);
    }

    #[test]
    fn constants_have_zero_error() {
        let one = NumericFn::Poly(vec![1.0]);
        let grid = GridSpec::over(-1.0, 1.0, 9, 0.3).unwrap();
        for r in 1..=4 {
            let rep = verify_two_factor(&one, &one, r, &grid, 1e-9).unwrap();
            assert_eq!(rep.max_abs_err, 0.0);
            assert!(rep.pass);
            let rep = verify_multi_factor(&[one.clone(), one.clone(), one.clone()], r, &grid, 1e-9).unwrap();
            assert_eq!(rep.max_abs_err, 0.0);
        }
    }

    #[test]
    fn singular_window_detected() {
        let rec = NumericFn::ReciprocalShifted(1.0);
        let grid = GridSpec::over(-2.0, 0.0, 20, 0.1).unwrap();
        let err = verify_two_factor(&rec, &NumericFn::Exp, 2, &grid, 1e-9).unwrap_err();
        assert!(matches!(err, Error::SingularityInWindow { .. }));
        // -1 is 0.5 from the grid, inside the margin 10 * 0.1 * 1
        let grid = GridSpec::over(-0.5, 0.0, 5, 0.1).unwrap();
        assert!(verify_two_factor(&rec, &NumericFn::Exp, 1, &grid, 1e-9).is_err());
        let far = GridSpec::over(1.5, 2.5, 5, 0.1).unwrap();
        assert!(verify_two_factor(&rec, &NumericFn::Exp, 2, &far, 1e-9).unwrap().pass);
    }

    #[test]
    fn invalid_order_and_tolerance() {
        let grid = GridSpec::over(0.0, 1.0, 4, 0.1).unwrap();
        assert!(matches!(
            verify_two_factor(&NumericFn::Exp, &NumericFn::Sin, 0, &grid, 1e-9),
            Err(Error::InvalidOrder(0))
        ));
        assert!(matches!(
            verify_multi_factor(&[NumericFn::Exp], 1, &grid, 0.0),
            Err(Error::InvalidTolerance(_))
        ));
        assert!(matches!(
            verify_multi_factor(&[], 1, &grid, 1e-9),
            Err(Error::EmptyFactorList)
        ));
    }

    #[test]
    fn report_json_keys() {
        let rep = VerificationReport {
            max_abs_err: 0.0,
            max_rel_err: 1.5e-12,
            cancellation_ratio: 3.0,
            trials: 64,
            pass: true,
        };
        let json = rep.to_json();
        assert!(!json.contains('\n'));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        for key in ["max_abs_err", "max_rel_err", "cancellation_ratio", "trials", "pass"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["trials"], 64);
    }
}
