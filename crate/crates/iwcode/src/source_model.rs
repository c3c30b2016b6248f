//! Discrete sources and importance weightings.
//!
//! A [`Distribution`] pairs with a [`WeightVector`] of per-symbol
//! importance weights. The message importance measure (MIM) family
//! generates such weights from a single [`ImportanceCoefficient`] `ω`:
//! each symbol gets the exponential factor `e^{ω(1−pᵢ)}`, so negative `ω`
//! emphasizes frequent symbols and positive `ω` emphasizes rare ones.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::util::comp_sum;

/// Maximum allowed deviation of a probability vector from unit sum.
pub const PROB_SUM_TOLERANCE: f64 = 1e-9;

/// A finite discrete source with strictly positive symbol probabilities.
///
/// Symbols are identified by their index `0..N-1`. Zero-probability
/// entries are rejected rather than silently dropped: ideal codeword
/// lengths take `log pᵢ`, which is undefined at zero, so callers must
/// prune impossible symbols themselves.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    /// Validates and wraps a probability vector. The entries are taken
    /// exactly as given; the sum may deviate from 1 by at most
    /// [`PROB_SUM_TOLERANCE`].
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        Self::validate_entries(&probs)?;
        let sum = comp_sum(probs.iter().copied());
        if (sum - 1.0).abs() > PROB_SUM_TOLERANCE {
            return Err(Error::NotNormalized {
                sum,
                tolerance: PROB_SUM_TOLERANCE,
            });
        }
        Ok(Self { probs })
    }

    /// Like [`Distribution::new`] but rescales the entries to unit sum
    /// first. Entries must still be positive and finite. Prefer
    /// [`Distribution::new`]: silent renormalization can mask input bugs.
    pub fn new_renormalized(mut probs: Vec<f64>) -> Result<Self> {
        Self::validate_entries(&probs)?;
        let sum = comp_sum(probs.iter().copied());
        if !sum.is_finite() || sum <= 0.0 {
            return Err(Error::NotNormalized {
                sum,
                tolerance: PROB_SUM_TOLERANCE,
            });
        }
        for p in &mut probs {
            *p /= sum;
        }
        Ok(Self { probs })
    }

    /// Uniform distribution over `n` symbols.
    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::AlphabetTooSmall(n));
        }
        Ok(Self {
            probs: vec![1.0 / n as f64; n],
        })
    }

    fn validate_entries(probs: &[f64]) -> Result<()> {
        if probs.len() < 2 {
            return Err(Error::AlphabetTooSmall(probs.len()));
        }
        for (index, &value) in probs.iter().enumerate() {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidProbability { index, value });
            }
        }
        Ok(())
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Number of symbols in the alphabet.
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Strictly positive, finite importance weights, one per symbol.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightVector {
    weights: Vec<f64>,
}

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        for (index, &value) in weights.iter().enumerate() {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidWeight { index, value });
            }
        }
        Ok(Self { weights })
    }

    /// The neutral weighting: every symbol weighs 1.
    pub fn ones(n: usize) -> Self {
        Self {
            weights: vec![1.0; n],
        }
    }

    /// Skips validation. Used where positivity holds by construction up
    /// to floating-point underflow.
    pub(crate) fn new_unchecked(weights: Vec<f64>) -> Self {
        Self { weights }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// The MIM importance coefficient `ω`. Any finite value; zero recovers
/// the unweighted (Shannon) setting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImportanceCoefficient(f64);

impl ImportanceCoefficient {
    pub fn new(omega: f64) -> Result<Self> {
        if !omega.is_finite() {
            return Err(Error::NonFiniteCoefficient(omega));
        }
        Ok(Self(omega))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Size `D ≥ 2` of the code alphabet. All logarithms in the measures are
/// taken base `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeBase(u32);

impl CodeBase {
    pub const BINARY: CodeBase = CodeBase(2);

    pub fn new(size: u32) -> Result<Self> {
        if size < 2 {
            return Err(Error::BaseTooSmall(size));
        }
        Ok(Self(size))
    }

    pub fn size(self) -> u32 {
        self.0
    }

    /// `log_D x`.
    pub(crate) fn log(self, x: f64) -> f64 {
        x.ln() / self.ln_size()
    }

    pub(crate) fn ln_size(self) -> f64 {
        f64::from(self.0).ln()
    }

    /// `D^{-len}`, underflowing to zero for very long codewords.
    pub(crate) fn pow_neg(self, len: u32) -> f64 {
        f64::from(self.0).powi(-(len.min(2_000) as i32))
    }
}

/// Unnormalized importance factor `MIM(xᵢ;ω) = pᵢ·e^{ω(1−pᵢ)}` of a
/// single symbol with probability `p`.
pub fn mim_factor(p: f64, omega: ImportanceCoefficient) -> f64 {
    debug_assert!(p > 0.0 && p <= 1.0, "probability out of range: {p}");
    p * (omega.value() * (1.0 - p)).exp()
}

/// Total importance `MIM(X;ω) = Σᵢ pᵢ·e^{ω(1−pᵢ)}`, the sum of the
/// per-symbol factors.
pub fn mim_total(dist: &Distribution, omega: ImportanceCoefficient) -> f64 {
    dist.probs().iter().map(|&p| mim_factor(p, omega)).sum()
}

/// Exponential factors rescaled by the largest one, so the biggest factor
/// is exactly 1 and the rest stay representable for |ω| far beyond the
/// bare `exp` range. Returns the factors and `Σ pᵢ·factorᵢ`.
fn shifted_factors(probs: &[f64], omega: f64) -> (Vec<f64>, f64) {
    let peak = probs
        .iter()
        .map(|&p| omega * (1.0 - p))
        .fold(f64::NEG_INFINITY, f64::max);
    let factors: Vec<f64> = probs
        .iter()
        .map(|&p| (omega * (1.0 - p) - peak).exp())
        .collect();
    let weighted_sum = comp_sum(probs.iter().zip(&factors).map(|(&p, &e)| p * e));
    (factors, weighted_sum)
}

/// Normalized importance `MIM_N(xᵢ;ω) = MIM(xᵢ;ω)/MIM(X;ω)`. Entries sum
/// to 1; at `ω = 0` they are exactly the probabilities.
pub fn mim_normalized(dist: &Distribution, omega: ImportanceCoefficient) -> Vec<f64> {
    if omega.value() == 0.0 {
        return dist.probs().to_vec();
    }
    let (factors, total) = shifted_factors(dist.probs(), omega.value());
    dist.probs()
        .iter()
        .zip(&factors)
        .map(|(&p, &e)| p * e / total)
        .collect()
}

/// MIM importance weights `wᵢ = e^{ω(1−pᵢ)}/MIM(X;ω)`. Since
/// `pᵢwᵢ = MIM_N(xᵢ;ω)`, the probabilistic average `Σ pᵢwᵢ` of these
/// weights is 1 by construction; at `ω = 0` the result is exactly the
/// all-ones vector.
///
/// Weights spanning more than roughly 745 nats (|ω|·(p_max − p_min) ≳ 745)
/// underflow to zero and are no longer usable as a [`WeightVector`].
pub fn mim_weights(dist: &Distribution, omega: ImportanceCoefficient) -> WeightVector {
    if omega.value() == 0.0 {
        return WeightVector::ones(dist.len());
    }
    let (factors, total) = shifted_factors(dist.probs(), omega.value());
    WeightVector::new_unchecked(factors.iter().map(|&e| e / total).collect())
}

/// Unnormalized exponential utilities `uᵢ ∝ e^{ω(1−pᵢ)}`, rescaled by the
/// largest factor. UISC bounds are invariant to that rescaling.
pub fn mim_utilities(dist: &Distribution, omega: ImportanceCoefficient) -> WeightVector {
    if omega.value() == 0.0 {
        return WeightVector::ones(dist.len());
    }
    let (factors, _) = shifted_factors(dist.probs(), omega.value());
    WeightVector::new_unchecked(factors)
}
