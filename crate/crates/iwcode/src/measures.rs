//! Information measures and the four families of code-length bounds.
//!
//! The central quantities for a source `p` with weights `w`:
//!
//! - `H_w(X) = Σ pⱼwⱼ`, the probabilistic average of the weights;
//! - `𝓛(w,X) = −Σ pᵢwᵢ·log_D(pᵢwᵢ/H_w)`, the importance-aware measure.
//!
//! The optimal weighted expected length `L̄*_w = min Σ pᵢwᵢlᵢ` over prefix
//! codes satisfies `𝓛 ≤ L̄*_w < 𝓛 + H_w`. With all-ones weights both
//! quantities collapse to Shannon entropy and the classical theorem.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::source_model::{
    mim_normalized, CodeBase, Distribution, ImportanceCoefficient, WeightVector,
};
use crate::util::{check_dims, comp_sum};

/// Which coding theorem a bound pair belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    Shannon,
    Uisc,
    Iw,
    Mim,
}

/// A lower/upper bound pair on the optimal expected codeword length, in
/// code symbols per source symbol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundsReport {
    pub theory: Theory,
    pub lower: f64,
    pub upper: f64,
}

pub(crate) fn hw_of(probs: &[f64], weights: &[f64]) -> f64 {
    comp_sum(probs.iter().zip(weights).map(|(&p, &w)| p * w))
}

pub(crate) fn iw_measure_given_hw(probs: &[f64], weights: &[f64], hw: f64, base: CodeBase) -> f64 {
    comp_sum(probs.iter().zip(weights).map(|(&p, &w)| {
        let mass = p * w;
        // subnormal products can underflow to zero; x·log x → 0 there
        if mass == 0.0 {
            0.0
        } else {
            -(mass * base.log(mass / hw))
        }
    }))
}

fn entropy_of(masses: &[f64], base: CodeBase) -> f64 {
    comp_sum(masses.iter().map(|&m| {
        if m == 0.0 {
            0.0
        } else {
            -(m * base.log(m))
        }
    }))
}

/// `H_w(X) = Σ pⱼwⱼ`.
pub fn weighted_avg_hw(dist: &Distribution, w: &WeightVector) -> Result<f64> {
    check_dims(dist.len(), w.len())?;
    Ok(hw_of(dist.probs(), w.weights()))
}

/// The importance-aware measure `𝓛(w,X) = −Σ pᵢwᵢ·log_D(pᵢwᵢ/H_w)`.
pub fn iw_measure(dist: &Distribution, w: &WeightVector, base: CodeBase) -> Result<f64> {
    check_dims(dist.len(), w.len())?;
    let hw = hw_of(dist.probs(), w.weights());
    Ok(iw_measure_given_hw(dist.probs(), w.weights(), hw, base))
}

/// Bounds `𝓛(w,X) ≤ L̄*_w < 𝓛(w,X) + H_w(X)` on the optimal weighted
/// expected length.
pub fn iw_bounds(dist: &Distribution, w: &WeightVector, base: CodeBase) -> Result<BoundsReport> {
    check_dims(dist.len(), w.len())?;
    let hw = hw_of(dist.probs(), w.weights());
    let lower = iw_measure_given_hw(dist.probs(), w.weights(), hw, base);
    Ok(BoundsReport {
        theory: Theory::Iw,
        lower,
        upper: lower + hw,
    })
}

/// Shannon entropy `H(X) = −Σ pᵢ·log_D pᵢ` in base-`D` units.
pub fn shannon_entropy(dist: &Distribution, base: CodeBase) -> f64 {
    entropy_of(dist.probs(), base)
}

/// The classical pair `(H, H+1)`.
pub fn shannon_bounds(dist: &Distribution, base: CodeBase) -> BoundsReport {
    let lower = shannon_entropy(dist, base);
    BoundsReport {
        theory: Theory::Shannon,
        lower,
        upper: lower + 1.0,
    }
}

/// 1-order useful-information source coding bounds driven by utilities
/// `u`: lower `= (−Σ uᵢpᵢ·log_D pᵢ)/(Σ uᵢpᵢ)`, upper `= lower + 1`.
/// Invariant to rescaling of `u`.
pub fn uisc_bounds(dist: &Distribution, u: &WeightVector, base: CodeBase) -> Result<BoundsReport> {
    check_dims(dist.len(), u.len())?;
    let numerator = comp_sum(
        dist.probs()
            .iter()
            .zip(u.weights())
            .map(|(&p, &ui)| -(ui * p * base.log(p))),
    );
    let denominator = hw_of(dist.probs(), u.weights());
    let lower = numerator / denominator;
    Ok(BoundsReport {
        theory: Theory::Uisc,
        lower,
        upper: lower + 1.0,
    })
}

/// Weighted expected code length `L̄_w = Σ pᵢwᵢlᵢ` of a concrete length
/// assignment.
pub fn weighted_expected_length(
    dist: &Distribution,
    w: &WeightVector,
    lengths: &[u32],
) -> Result<f64> {
    check_dims(dist.len(), w.len())?;
    check_dims(dist.len(), lengths.len())?;
    validate_lengths(lengths)?;
    Ok(comp_sum(
        dist.probs()
            .iter()
            .zip(w.weights())
            .zip(lengths)
            .map(|((&p, &wi), &l)| p * wi * f64::from(l)),
    ))
}

pub(crate) fn validate_lengths(lengths: &[u32]) -> Result<()> {
    for (index, &l) in lengths.iter().enumerate() {
        if l == 0 {
            return Err(Error::ZeroLength(index));
        }
    }
    Ok(())
}

/// Entropy of the normalized importance density,
/// `H_MIM(X;ω) = −Σ MIM_N(xᵢ;ω)·log_D MIM_N(xᵢ;ω)`. Coincides with
/// [`iw_measure`] under [`mim_weights`](crate::source_model::mim_weights),
/// and with [`shannon_entropy`] at `ω = 0`.
pub fn mim_entropy(dist: &Distribution, omega: ImportanceCoefficient, base: CodeBase) -> f64 {
    if omega.value() == 0.0 {
        return shannon_entropy(dist, base);
    }
    entropy_of(&mim_normalized(dist, omega), base)
}

/// MIM-weighted bounds `H_MIM ≤ L̄*(ω) < H_MIM + 1`.
pub fn mim_bounds(dist: &Distribution, omega: ImportanceCoefficient, base: CodeBase) -> BoundsReport {
    let lower = mim_entropy(dist, omega, base);
    BoundsReport {
        theory: Theory::Mim,
        lower,
        upper: lower + 1.0,
    }
}

/// MIM-weighted expected length `L̄(ω) = Σ MIM_N(xᵢ;ω)·lᵢ`.
pub fn mim_weighted_length(
    dist: &Distribution,
    omega: ImportanceCoefficient,
    lengths: &[u32],
) -> Result<f64> {
    check_dims(dist.len(), lengths.len())?;
    validate_lengths(lengths)?;
    let normalized = mim_normalized(dist, omega);
    Ok(comp_sum(
        normalized
            .iter()
            .zip(lengths)
            .map(|(&m, &l)| m * f64::from(l)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source_model::mim_weights;

    fn omega(value: f64) -> ImportanceCoefficient {
        ImportanceCoefficient::new(value).unwrap()
    }

    fn dist(probs: &[f64]) -> Distribution {
        Distribution::new(probs.to_vec()).unwrap()
    }

    fn weights(values: &[f64]) -> WeightVector {
        WeightVector::new(values.to_vec()).unwrap()
    }

    const D2: CodeBase = CodeBase::BINARY;

    #[test]
    fn hw_examples() {
        let d = dist(&[0.8, 0.2]);
        assert_eq!(weighted_avg_hw(&d, &WeightVector::ones(2)).unwrap(), 1.0);
        assert!((weighted_avg_hw(&d, &weights(&[1.0, 2.0])).unwrap() - 1.2).abs() < 1e-12);
        // MIM weights average to one by construction
        for w in [-3.0, 0.4, 6.0] {
            let hw = weighted_avg_hw(&d, &mim_weights(&d, omega(w))).unwrap();
            assert!((hw - 1.0).abs() < 1e-12, "omega {w}: H_w {hw}");
        }
    }

    #[test]
    fn hw_dimension_mismatch() {
        let d = dist(&[0.8, 0.2]);
        assert_eq!(
            weighted_avg_hw(&d, &WeightVector::ones(3)),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn iw_measure_examples() {
        let d = dist(&[0.8, 0.2]);
        // all-ones weights collapse to Shannon entropy
        let m = iw_measure(&d, &WeightVector::ones(2), D2).unwrap();
        assert!((m - shannon_entropy(&d, D2)).abs() < 1e-12);

        let m = iw_measure(&d, &weights(&[1.0, 2.0]), D2).unwrap();
        assert!((m - 1.1019550008653873).abs() < 1e-12);

        // uniform probs and weights in base N: normalized density is
        // uniform, so the measure equals H_w
        let u = Distribution::uniform(5).unwrap();
        let w = weights(&[3.0; 5]);
        let base5 = CodeBase::new(5).unwrap();
        let hw = weighted_avg_hw(&u, &w).unwrap();
        assert!((iw_measure(&u, &w, base5).unwrap() - hw).abs() < 1e-12);
    }

    #[test]
    fn iw_bounds_examples() {
        let d = dist(&[0.8, 0.2]);
        let b = iw_bounds(&d, &WeightVector::ones(2), D2).unwrap();
        let h = shannon_entropy(&d, D2);
        assert_eq!(b.theory, Theory::Iw);
        assert!((b.lower - h).abs() < 1e-12);
        assert!((b.upper - (h + 1.0)).abs() < 1e-12);

        let b = iw_bounds(&d, &weights(&[1.0, 2.0]), D2).unwrap();
        assert!((b.lower - 1.1019550008653873).abs() < 1e-12);
        assert!((b.upper - 2.3019550008653875).abs() < 1e-11);

        // near-degenerate source: lower bound collapses toward zero
        let eps = 1e-9;
        let nearly = dist(&[1.0 - eps, eps]);
        let b = iw_bounds(&nearly, &WeightVector::ones(2), D2).unwrap();
        assert!(b.lower >= 0.0 && b.lower < 1e-6);
    }

    #[test]
    fn shannon_examples() {
        assert!((shannon_entropy(&dist(&[0.5, 0.5]), D2) - 1.0).abs() < 1e-15);
        assert!((shannon_entropy(&dist(&[0.8, 0.2]), D2) - 0.7219280948873623).abs() < 1e-12);
        let u = Distribution::uniform(8).unwrap();
        assert!((shannon_entropy(&u, CodeBase::new(8).unwrap()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn uisc_examples() {
        let d = dist(&[0.8, 0.2]);
        let b = uisc_bounds(&d, &WeightVector::ones(2), D2).unwrap();
        assert_eq!(b.theory, Theory::Uisc);
        assert!((b.lower - shannon_entropy(&d, D2)).abs() < 1e-12);

        let b = uisc_bounds(&d, &weights(&[1.0, 2.0]), D2).unwrap();
        assert!((b.lower - 0.988594761554029).abs() < 1e-12);
        assert!((b.upper - b.lower - 1.0).abs() < 1e-15);

        // utilities are scale invariant
        for c in [1e-6, 0.37, 1e6] {
            let scaled = weights(&[c, 2.0 * c]);
            let bs = uisc_bounds(&d, &scaled, D2).unwrap();
            assert!((bs.lower - b.lower).abs() < 1e-12);
        }
    }

    #[test]
    fn weighted_expected_length_examples() {
        let d = dist(&[0.5, 0.25, 0.25]);
        let w = weights(&[1.0, 4.0, 4.0]);
        assert_eq!(weighted_expected_length(&d, &w, &[2, 2, 1]).unwrap(), 4.0);

        // all-ones weights give the classical expected length
        let ones = WeightVector::ones(3);
        let l = weighted_expected_length(&d, &ones, &[1, 2, 2]).unwrap();
        assert!((l - 1.5).abs() < 1e-15);

        // constant lengths factor out as c·H_w
        let hw = weighted_avg_hw(&d, &w).unwrap();
        let l = weighted_expected_length(&d, &w, &[3, 3, 3]).unwrap();
        assert!((l - 3.0 * hw).abs() < 1e-12);

        assert_eq!(
            weighted_expected_length(&d, &w, &[1, 0, 2]),
            Err(Error::ZeroLength(1))
        );
        assert!(weighted_expected_length(&d, &w, &[1, 2]).is_err());
    }

    #[test]
    fn mim_entropy_examples() {
        let d = dist(&[0.8, 0.2]);
        assert_eq!(mim_entropy(&d, omega(0.0), D2), shannon_entropy(&d, D2));
        assert!((mim_entropy(&d, omega(1.0), D2) - 0.8965663270368011).abs() < 1e-10);
        for w in [-5.0, 0.1, 8.0] {
            assert!((mim_entropy(&dist(&[0.5, 0.5]), omega(w), D2) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn mim_entropy_matches_iw_measure_under_mim_weights() {
        let d = dist(&[0.1, 0.2, 0.3, 0.4]);
        for w in [-4.0, -0.5, 1.0, 8.0] {
            let via_weights = iw_measure(&d, &mim_weights(&d, omega(w)), D2).unwrap();
            let direct = mim_entropy(&d, omega(w), D2);
            assert!(
                (via_weights - direct).abs() < 1e-12,
                "omega {w}: {via_weights} vs {direct}"
            );
        }
    }

    #[test]
    fn mim_bounds_examples() {
        let d = dist(&[0.8, 0.2]);
        let b0 = mim_bounds(&d, omega(0.0), D2);
        assert_eq!(b0.theory, Theory::Mim);
        assert_eq!(b0.lower, shannon_entropy(&d, D2));

        let b = mim_bounds(&d, omega(1.0), D2);
        assert!((b.lower - 0.8965663270368011).abs() < 1e-10);
        assert!((b.upper - b.lower - 1.0).abs() < 1e-15);

        // permutation invariance
        let flipped = mim_bounds(&dist(&[0.2, 0.8]), omega(1.0), D2);
        assert!((flipped.lower - b.lower).abs() < 1e-12);
    }

    #[test]
    fn mim_weighted_length_examples() {
        let d = dist(&[0.8, 0.2]);
        // ω = 0 gives the classical expected length
        let l0 = mim_weighted_length(&d, omega(0.0), &[1, 2]).unwrap();
        assert!((l0 - 1.2).abs() < 1e-15);

        let l = mim_weighted_length(&d, omega(1.0), &[1, 2]).unwrap();
        assert!((l - 1.3129648952316626).abs() < 1e-10);

        // agrees with the explicit-weights route
        let via_weights =
            weighted_expected_length(&d, &mim_weights(&d, omega(1.0)), &[1, 2]).unwrap();
        assert!((l - via_weights).abs() < 1e-12);

        // uniform source, constant lengths: normalized weights sum to one
        let u = Distribution::uniform(4).unwrap();
        let l = mim_weighted_length(&u, omega(3.0), &[5, 5, 5, 5]).unwrap();
        assert!((l - 5.0).abs() < 1e-12);
    }

    #[test]
    fn bounds_report_json_shape() {
        let report = BoundsReport {
            theory: Theory::Mim,
            lower: 0.5,
            upper: 1.5,
        };
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(json, r#"{"theory":"mim","lower":0.5,"upper":1.5}"#);
    }
}
