//! Products of several factors: multiplicativity of `L`, the alternating-sum
//! form of `δ^r(f_1 ⋯ f_n)`, binomial inversion between the sequences
//! `l^r δ^r F` and `L^r F`, and the EGF relation `Ā(t) = e^t A(t)`.

use crate::algebra::{BiPoly, PascalRows};
use crate::error::{Error, Result};
use crate::operators::{delta, delta_pow, translation, translation_pow, OperatorOrder};

/// Nonempty list of factors `f_1, …, f_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorList {
    factors: Vec<BiPoly>,
}

impl FactorList {
    pub fn new(factors: Vec<BiPoly>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyFactorList);
        }
        Ok(FactorList { factors })
    }

    pub fn factors(&self) -> &[BiPoly] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn product(&self) -> BiPoly {
        self.factors.iter().cloned().product()
    }
}

/// Truncated exponential generating function; `coeffs[r]` multiplies
/// `t^r / r!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BiPoly>,
}

impl TruncatedSeries {
    /// `coeffs` must be nonempty; the truncation order is `len - 1`.
    pub fn new(coeffs: Vec<BiPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series holds at least the t^0 coefficient");
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BiPoly::zero(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BiPoly] {
        &self.coeffs
    }
}

/// `L^r(Π f_i) == Π L^r(f_i)`.
pub fn check_multiplicativity(fs: &FactorList, r: impl Into<OperatorOrder>) -> bool {
    let r = r.into();
    let lhs = translation_pow(&fs.product(), r);
    let rhs: BiPoly = fs.factors().iter().map(|f| translation_pow(f, r)).product();
    lhs == rhs
}

/// `L^k f = Σ_j C(k,j) l^j δ^j f`.
pub fn translation_pow_expanded(f: &BiPoly, k: impl Into<OperatorOrder>) -> BiPoly {
    let k = k.into().get();
    let pascal = PascalRows::up_to(k);
    expand_with_deltas(f, k, &pascal)
}

fn expand_with_deltas(f: &BiPoly, k: u32, pascal: &PascalRows) -> BiPoly {
    let mut out = BiPoly::zero();
    let mut dj = f.clone();
    for j in 0..=k {
        if dj.is_zero() {
            break;
        }
        out += &dj.scale_int(pascal.get(k, j)).mul_lambda_pow(j);
        dj = delta(&dj);
    }
    out
}

/// `Σ_k C(r,k) (-1)^(r-k) values[k]` with `r = values.len() - 1`.
pub fn alternating_binomial_sum(values: &[BiPoly]) -> BiPoly {
    let Some(r) = values.len().checked_sub(1) else {
        return BiPoly::zero();
    };
    let r = r as u32;
    let pascal = PascalRows::up_to(r);
    let mut out = BiPoly::zero();
    for (k, v) in values.iter().enumerate() {
        let term = v.scale_int(pascal.get(r, k as u32));
        if (r - k as u32).is_multiple_of(2) {
            out += &term;
        } else {
            out -= &term;
        }
    }
    out
}

/// `Σ_k C(r,k) values[k]` with `r = values.len() - 1`.
pub fn binomial_sum(values: &[BiPoly]) -> BiPoly {
    let Some(r) = values.len().checked_sub(1) else {
        return BiPoly::zero();
    };
    let r = r as u32;
    let pascal = PascalRows::up_to(r);
    values
        .iter()
        .enumerate()
        .map(|(k, v)| v.scale_int(pascal.get(r, k as u32)))
        .sum()
}

/// `δ^r(f_1 ⋯ f_n)` through the alternating sum of products of `L^k f_i`,
/// followed by `r` exact divisions by `l`.
pub fn multi_delta(fs: &FactorList, r: impl Into<OperatorOrder>) -> Result<BiPoly> {
    let r = r.into().get();
    if r == 0 {
        return Err(Error::InvalidOrder(r));
    }
    let pascal = PascalRows::up_to(r);
    let products: Vec<BiPoly> = (0..=r)
        .map(|k| {
            fs.factors()
                .iter()
                .map(|f| expand_with_deltas(f, k, &pascal))
                .product()
        })
        .collect();
    let mut sum = alternating_binomial_sum(&products);
    for _ in 0..r {
        sum = sum
            .divide_by_lambda()
            .map_err(|_| Error::InternalDivisibilityFailure(r))?;
    }
    Ok(sum)
}

/// `Σ_k C(r,k) (-1)^(r-k) L^k(Π f_i)`, which equals `l^r δ^r(Π f_i)`.
pub fn forward_binomial(fs: &FactorList, r: impl Into<OperatorOrder>) -> BiPoly {
    let r = r.into().get();
    let mut shifts = Vec::with_capacity(r as usize + 1);
    let mut cur = fs.product();
    for _ in 0..=r {
        let next = translation(&cur);
        shifts.push(std::mem::replace(&mut cur, next));
    }
    alternating_binomial_sum(&shifts)
}

/// `Σ_k C(r,k) l^k δ^k(Π f_i)`, which equals `L^r(Π f_i)`.
pub fn inverse_binomial(fs: &FactorList, r: impl Into<OperatorOrder>) -> BiPoly {
    let r = r.into().get();
    let scaled = scaled_delta_powers(&fs.product(), r);
    binomial_sum(&scaled)
}

/// `[l^k δ^k p]` for `k = 0..=order`.
fn scaled_delta_powers(p: &BiPoly, order: u32) -> Vec<BiPoly> {
    let mut out = Vec::with_capacity(order as usize + 1);
    let mut dk = p.clone();
    for k in 0..=order {
        out.push(dk.mul_lambda_pow(k));
        dk = delta(&dk);
    }
    out
}

/// `A(t) = Σ l^r δ^r(Π f_i) t^r/r!` and `Ā(t) = Σ L^r(Π f_i) t^r/r!`,
/// truncated at `order`.
pub fn egf_pair(fs: &FactorList, order: usize) -> (TruncatedSeries, TruncatedSeries) {
    let product = fs.product();
    let a = scaled_delta_powers(&product, order as u32);
    let mut abar = Vec::with_capacity(order + 1);
    let mut cur = product;
    for _ in 0..=order {
        let next = translation(&cur);
        abar.push(std::mem::replace(&mut cur, next));
    }
    (TruncatedSeries::new(a), TruncatedSeries::new(abar))
}

/// Coefficientwise check of `Ā = e^t A`: `Ā_r = Σ_k C(r,k) A_k`.
pub fn egf_check(a: &TruncatedSeries, abar: &TruncatedSeries) -> Result<bool> {
    if a.order() != abar.order() {
        return Err(Error::OrderMismatch(a.order(), abar.order()));
    }
    Ok((0..=a.order()).all(|r| binomial_sum(&a.coeffs()[..=r]) == abar.coeffs()[r]))
}

/// `δ^r(Π f_i)` by iterating the definition on the expanded product.
pub fn delta_pow_of_product(fs: &FactorList, r: impl Into<OperatorOrder>) -> BiPoly {
    delta_pow(&fs.product(), r)
}
