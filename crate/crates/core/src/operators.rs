//! The difference quotient `δ` and the translation operator `L = I + l·δ`
//! acting on `Q[x, l]`.

use std::fmt;

use crate::algebra::BiPoly;

/// Power of an operator; `0` is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OperatorOrder(pub u32);

impl OperatorOrder {
    pub const IDENTITY: OperatorOrder = OperatorOrder(0);

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl From<u32> for OperatorOrder {
    fn from(r: u32) -> Self {
        OperatorOrder(r)
    }
}

impl fmt::Display for OperatorOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `(p(x + l) - p(x)) / l`.
pub fn delta(p: &BiPoly) -> BiPoly {
    (&p.shift_x() - p)
        .divide_by_lambda()
        .expect("shift_x(p) - p always carries a factor of l")
}

/// `δ` applied `r` times.
pub fn delta_pow(p: &BiPoly, r: impl Into<OperatorOrder>) -> BiPoly {
    let r = r.into().get();
    let mut out = p.clone();
    for _ in 0..r {
        if out.is_zero() {
            break;
        }
        out = delta(&out);
    }
    out
}

/// `L(p) = p + l·δ(p)`.
pub fn translation(p: &BiPoly) -> BiPoly {
    p + &delta(p).mul_lambda_pow(1)
}

/// `L` applied `k` times, i.e. `p(x + k·l)`.
pub fn translation_pow(p: &BiPoly, k: impl Into<OperatorOrder>) -> BiPoly {
    let k = k.into().get();
    let mut out = p.clone();
    for _ in 0..k {
        out = translation(&out);
    }
    out
}
