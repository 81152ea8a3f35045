//! Seeded randomized campaigns checking each identity exactly.

use std::fmt;

use crate::algebra::BiPoly;
use crate::error::{Error, Result};
use crate::leibniz::{apply_expansion, leibniz_terms};
use crate::multifactor::{
    alternating_binomial_sum, binomial_sum, egf_check, egf_pair, forward_binomial,
    inverse_binomial, multi_delta, FactorList,
};
use crate::operators::{delta_pow, translation_pow};
use crate::random::{campaign_rng, PolySampler};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    /// Two-factor closed form against iterated `δ`.
    TwoFactor,
    /// Alternating-sum form for `n` factors against iterated `δ`.
    MultiFactor,
    /// Both directions of the binomial inversion between `l^k δ^k F` and `L^k F`.
    Inversion,
    /// `Ā(t) = e^t A(t)` up to the truncation order.
    Egf,
}

impl Identity {
    pub fn label(self) -> &'static str {
        match self {
            Identity::TwoFactor => "1.1",
            Identity::MultiFactor => "1.3",
            Identity::Inversion => "inversion",
            Identity::Egf => "egf",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignConfig {
    pub identity: Identity,
    /// Operator order, or the truncation order for [`Identity::Egf`].
    pub r: u32,
    /// Number of factors; fixed at 2 for [`Identity::TwoFactor`].
    pub n: usize,
    pub trials: u32,
    pub seed: u64,
    pub sampler: PolySampler,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialFailure {
    pub trial: u32,
    pub factors: Vec<BiPoly>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignSummary {
    pub config: CampaignConfig,
    pub passed: u32,
    pub failures: Vec<TrialFailure>,
}

impl CampaignSummary {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Returns `None` when the trial passes, otherwise a description.
fn check_trial(identity: Identity, r: u32, factors: &[BiPoly]) -> Result<Option<String>> {
    let fs = FactorList::new(factors.to_vec())?;
    let outcome = match identity {
        Identity::TwoFactor => {
            let lhs = apply_expansion(&leibniz_terms(r)?, &factors[0], &factors[1]);
            let rhs = delta_pow(&fs.product(), r);
            (lhs != rhs).then(|| format!("expansion = {lhs}; delta_pow = {rhs}"))
        }
        Identity::MultiFactor => {
            let lhs = match multi_delta(&fs, r) {
                Ok(p) => p,
                Err(Error::InternalDivisibilityFailure(r)) => {
                    return Ok(Some(format!("alternating sum not divisible by l^{r}")))
                }
                Err(e) => return Err(e),
            };
            let rhs = delta_pow(&fs.product(), r);
            (lhs != rhs).then(|| format!("multi_delta = {lhs}; delta_pow = {rhs}"))
        }
        Identity::Inversion => {
            let product = fs.product();
            let forward: Vec<BiPoly> = (0..=r).map(|k| forward_binomial(&fs, k)).collect();
            let inverse: Vec<BiPoly> = (0..=r).map(|k| inverse_binomial(&fs, k)).collect();
            let shifted = translation_pow(&product, r);
            let scaled = delta_pow(&product, r).mul_lambda_pow(r);
            let back = binomial_sum(&forward);
            let there = alternating_binomial_sum(&inverse);
            if back != shifted {
                Some(format!("forward then inverse = {back}; L^r F = {shifted}"))
            } else if there != scaled {
                Some(format!("inverse then forward = {there}; l^r delta^r F = {scaled}"))
            } else {
                None
            }
        }
        Identity::Egf => {
            let (a, abar) = egf_pair(&fs, r as usize);
            (!egf_check(&a, &abar)?).then(|| format!("EGF relation fails at order {r}"))
        }
    };
    Ok(outcome)
}

pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignSummary> {
    let n = match config.identity {
        Identity::TwoFactor => 2,
        _ => config.n,
    };
    if n == 0 {
        return Err(Error::EmptyFactorList);
    }
    if matches!(config.identity, Identity::TwoFactor | Identity::MultiFactor) && config.r == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let mut rng = campaign_rng(config.seed);
    let mut passed = 0;
    let mut failures = Vec::new();
    for trial in 0..config.trials {
        let factors = config.sampler.sample_many(&mut rng, n);
        match check_trial(config.identity, config.r, &factors)? {
            None => passed += 1,
            Some(detail) => failures.push(TrialFailure {
                trial,
                factors,
                detail,
            }),
        }
    }
    Ok(CampaignSummary {
        config: CampaignConfig {
            n,
            ..config.clone()
        },
        passed,
        failures,
    })
}
