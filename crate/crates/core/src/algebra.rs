//! Exact arithmetic in `Q[x, l]`.
//!
//! `l` stands for the step λ of the difference quotient. It is kept as a
//! formal indeterminate, so every operator identity becomes an equality of
//! sparse polynomials and the classical limit λ → 0 is a substitution.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient. `Ratio` keeps it reduced with a positive
/// denominator, and zero is `0/1`.
pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// `C(n, k)`, zero when `k > n`.
pub fn binom(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Rows `0..=n` of Pascal's triangle.
#[derive(Debug, Clone)]
pub struct PascalRows {
    rows: Vec<Vec<BigInt>>,
}

impl PascalRows {
    pub fn up_to(n: u32) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n as usize + 1);
        rows.push(vec![BigInt::one()]);
        for i in 1..=n as usize {
            let prev = &rows[i - 1];
            let mut row = Vec::with_capacity(i + 1);
            row.push(BigInt::one());
            for k in 1..i {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        PascalRows { rows }
    }

    pub fn get(&self, n: u32, k: u32) -> &BigInt {
        &self.rows[n as usize][k as usize]
    }

    pub fn row(&self, n: u32) -> &[BigInt] {
        &self.rows[n as usize]
    }
}

/// Exponent pair of a monomial `x^x * l^lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub x: u32,
    pub lambda: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, lambda: 0 };

    pub fn new(x: u32, lambda: u32) -> Self {
        Monomial { x, lambda }
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial {
            x: self.x + other.x,
            lambda: self.lambda + other.lambda,
        }
    }
}

/// Sparse polynomial in `x` and `l` over the rationals.
///
/// No stored coefficient is zero, so derived equality is polynomial equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        BiPoly::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        BiPoly::monomial(Rational::one(), 1, 0)
    }

    pub fn lambda() -> Self {
        BiPoly::monomial(Rational::one(), 0, 1)
    }

    pub fn lambda_pow(e: u32) -> Self {
        BiPoly::monomial(Rational::one(), 0, e)
    }

    pub fn monomial(c: Rational, x: u32, lambda: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(Monomial::new(x, lambda), c);
        p
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = BiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place, keeping the sparse form canonical.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `(deg_x, deg_l)` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, x: u32, lambda: u32) -> Rational {
        self.terms
            .get(&Monomial::new(x, lambda))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Degree in `x`; `None` for the zero polynomial.
    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x).max()
    }

    pub fn deg_lambda(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.lambda).max()
    }

    pub fn is_lambda_free(&self) -> bool {
        self.terms.keys().all(|m| m.lambda == 0)
    }

    pub fn scale(&self, c: &Rational) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> BiPoly {
        self.scale(&Rational::from_integer(c.clone()))
    }

    /// Multiplies by `l^e`.
    pub fn mul_lambda_pow(&self, e: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.x, m.lambda + e), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `p(x + l, l)`, expanding each `x^i` binomially.
    pub fn shift_x(&self) -> BiPoly {
        let max_x = self.deg_x().unwrap_or(0);
        let pascal = PascalRows::up_to(max_x);
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            for (j, b) in pascal.row(m.x).iter().enumerate() {
                let j = j as u32;
                // C(i, j) x^j l^(i - j) times the existing l^lambda
                out.add_term(
                    Monomial::new(j, m.x - j + m.lambda),
                    c * Rational::from_integer(b.clone()),
                );
            }
        }
        out
    }

    /// Exact division by `l`.
    pub fn divide_by_lambda(&self) -> Result<BiPoly> {
        self.divide_by_lambda_pow(1)
    }

    /// Exact division by `l^e`.
    pub fn divide_by_lambda_pow(&self, e: u32) -> Result<BiPoly> {
        if self.terms.keys().any(|m| m.lambda < e) {
            return Err(Error::NotDivisible);
        }
        Ok(BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.x, m.lambda - e), c.clone()))
                .collect(),
        })
    }

    pub fn eval(&self, x0: &Rational, l0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc += c * pow_rational(x0, m.x) * pow_rational(l0, m.lambda);
        }
        acc
    }

    pub fn eval_float(&self, x0: f64, l0: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                c * x0.powi(m.x as i32) * l0.powi(m.lambda as i32)
            })
            .sum()
    }

    /// Sets `l = 0`, leaving a polynomial in `x` alone.
    pub fn subst_lambda_zero(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.lambda == 0)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// `r`-th partial derivative in `x`.
    pub fn derivative_x(&self, r: u32) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            if m.x < r {
                continue;
            }
            // falling factorial x (x-1) ... (x-r+1)
            let falling = (0..r).fold(BigInt::one(), |acc, i| acc * BigInt::from(m.x - i));
            out.add_term(
                Monomial::new(m.x - r, m.lambda),
                c * Rational::from_integer(falling),
            );
        }
        out
    }
}

fn pow_rational(base: &Rational, e: u32) -> Rational {
    num_traits::pow(base.clone(), e as usize)
}

impl From<i64> for BiPoly {
    fn from(c: i64) -> Self {
        BiPoly::constant(Rational::from_integer(BigInt::from(c)))
    }
}

impl From<Rational> for BiPoly {
    fn from(c: Rational) -> Self {
        BiPoly::constant(c)
    }
}

impl AddAssign<&BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: &BiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&BiPoly> for BiPoly {
    fn sub_assign(&mut self, rhs: &BiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(*mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: &BiPoly) -> BiPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<BiPoly> for &BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add add, Sub sub, Mul mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl std::iter::Sum for BiPoly {
    fn sum<I: Iterator<Item = BiPoly>>(iter: I) -> BiPoly {
        iter.fold(BiPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl std::iter::Product for BiPoly {
    fn product<I: Iterator<Item = BiPoly>>(iter: I) -> BiPoly {
        iter.fold(BiPoly::one(), |acc, p| &acc * &p)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (name, e) in [("x", m.x), ("l", m.lambda)] {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(name)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Canonical rendering: terms by descending `(deg_x, deg_l)`, coefficients
/// as `a/b` with `/1` suppressed, e.g. `3*x^2*l - x + 1/2*l^2`.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}
