//! Seeded random polynomials for verification campaigns.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BiPoly, Monomial, Rational};

pub type CampaignRng = ChaCha8Rng;

pub fn campaign_rng(seed: u64) -> CampaignRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of the random polynomials: coefficients are `a/b` with
/// `|a| <= max_numer` and `1 <= b <= max_denom`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolySampler {
    pub max_deg_x: u32,
    pub max_deg_lambda: u32,
    pub max_numer: i64,
    pub max_denom: i64,
}

impl Default for PolySampler {
    fn default() -> Self {
        PolySampler {
            max_deg_x: 5,
            max_deg_lambda: 2,
            max_numer: 20,
            max_denom: 10,
        }
    }
}

impl PolySampler {
    pub fn lambda_free(self) -> Self {
        PolySampler {
            max_deg_lambda: 0,
            ..self
        }
    }

    pub fn with_max_deg_x(self, max_deg_x: u32) -> Self {
        PolySampler { max_deg_x, ..self }
    }

    pub fn coefficient<R: Rng + ?Sized>(&self, rng: &mut R) -> Rational {
        let a = rng.random_range(-self.max_numer..=self.max_numer);
        let b = rng.random_range(1..=self.max_denom);
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    /// The leading `x` degree is drawn uniformly from `0..=max_deg_x` and its
    /// `l`-free coefficient is forced nonzero; the remaining monomials are
    /// present with probability 0.7 (`l`-free) or 0.3 (with `l`).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BiPoly {
        let deg = rng.random_range(0..=self.max_deg_x);
        let mut p = BiPoly::zero();
        for i in 0..=deg {
            for j in 0..=self.max_deg_lambda {
                let keep = if i == deg && j == 0 {
                    true
                } else if j == 0 {
                    rng.random_bool(0.7)
                } else {
                    rng.random_bool(0.3)
                };
                if !keep {
                    continue;
                }
                let mut c = self.coefficient(rng);
                if i == deg && j == 0 {
                    while c == Rational::from_integer(BigInt::from(0)) {
                        c = self.coefficient(rng);
                    }
                }
                p.add_term(Monomial::new(i, j), c);
            }
        }
        p
    }

    pub fn sample_many<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Vec<BiPoly> {
        (0..n).map(|_| self.sample(rng)).collect()
    }
}
