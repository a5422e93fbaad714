//! Parametric preference models.
//!
//! A worker comparing objects with qualities `q_i` and `q_j` prefers the
//! first with probability `F(q_i - q_j)`, where `F` is a strictly
//! increasing link function with `F(0) = 1/2`. Two links are provided:
//! the Thurstone model (Gaussian CDF of the quality difference) and the
//! Bradley-Terry-Luce model (logistic).

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::normal;

fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Link function of a pairwise preference model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PreferenceModel {
    /// `F(x) = Phi(x / sigma)` where `Phi` is the standard normal CDF and
    /// `sigma` is the standard deviation of the comparison noise on the
    /// quality difference.
    Thurstone { sigma: f64 },
    /// `F(x) = e^x / (1 + e^x)`.
    Btl,
}

impl PreferenceModel {
    pub fn thurstone(sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::Config(format!(
                "thurstone sigma must be a positive finite real, got {sigma}"
            )));
        }
        Ok(PreferenceModel::Thurstone { sigma })
    }

    pub fn btl() -> Self {
        PreferenceModel::Btl
    }

    fn check_delta(delta: f64) -> Result<()> {
        if !delta.is_finite() {
            return Err(Error::Domain(format!(
                "quality difference must be finite, got {delta}"
            )));
        }
        Ok(())
    }

    /// Probability `F(delta)` that the first object of a pair with quality
    /// difference `delta` is preferred.
    pub fn preference_prob(&self, delta: f64) -> Result<f64> {
        Self::check_delta(delta)?;
        Ok(match *self {
            PreferenceModel::Thurstone { sigma } => normal::cdf(delta / sigma),
            PreferenceModel::Btl => sigmoid(delta),
        })
    }

    /// Inverse link `F^{-1}(p)`. Callers must clamp `p` into `(0, 1)` first;
    /// values outside the open interval are a domain error.
    pub fn inverse_preference(&self, p: f64) -> Result<f64> {
        if !(p.is_finite() && p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!(
                "preference probability must lie in (0, 1), got {p}"
            )));
        }
        Ok(match *self {
            PreferenceModel::Thurstone { sigma } => sigma * normal::quantile(p),
            PreferenceModel::Btl => p.ln() - (1.0 - p).ln(),
        })
    }

    /// `(F, F', F'')` evaluated at `delta`.
    pub fn prob_derivatives(&self, delta: f64) -> Result<(f64, f64, f64)> {
        Self::check_delta(delta)?;
        Ok(match *self {
            PreferenceModel::Thurstone { sigma } => {
                let z = delta / sigma;
                let p = normal::cdf(z);
                let d1 = normal::pdf(z) / sigma;
                let d2 = -(z / sigma) * d1;
                (p, d1, d2)
            }
            PreferenceModel::Btl => {
                let p = sigmoid(delta);
                let d1 = p * (1.0 - p);
                (p, d1, d1 * (1.0 - 2.0 * p))
            }
        })
    }

    /// Slope of the inverse link, `dF^{-1}/dp` at `p`, i.e. `1 / F'(F^{-1}(p))`.
    pub fn inverse_slope(&self, p: f64) -> Result<f64> {
        let x = self.inverse_preference(p)?;
        let (_, d1, _) = self.prob_derivatives(x)?;
        Ok(1.0 / d1)
    }

    /// Number of times the first object wins out of `workers` independent
    /// comparisons, `K ~ Bin(workers, F(delta))`.
    pub fn sample_comparisons<R: Rng + ?Sized>(
        &self,
        delta: f64,
        workers: u64,
        rng: &mut R,
    ) -> Result<u64> {
        let p = self.preference_prob(delta)?;
        if workers == 0 {
            return Ok(0);
        }
        let bin = Binomial::new(workers, p)
            .map_err(|e| Error::Numerical(format!("binomial sampling failed: {e}")))?;
        Ok(bin.sample(rng))
    }
}
