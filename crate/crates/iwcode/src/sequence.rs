//! Supersymbol (block) extension of weighted sources.
//!
//! Encoding blocks of `n` symbols jointly treats each block as one
//! supersymbol whose probability and weight are the products of the
//! per-symbol values. The per-symbol bounds tighten as `n` grows: for
//! i.i.d. blocks the slack term drops from `H_w` to `H_wⁿ/n`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{hw_of, iw_measure_given_hw, validate_lengths, BoundsReport, Theory};
use crate::source_model::{CodeBase, Distribution, WeightVector, PROB_SUM_TOLERANCE};
use crate::util::{check_dims, comp_sum};

/// Default cap on the number of materialized joint entries.
pub const DEFAULT_SEQ_CAP: usize = 1 << 20;

/// A joint source over blocks of `n` symbols, indexed lexicographically
/// by the component symbols (first symbol most significant).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductSource {
    n: usize,
    #[serde(skip)]
    alphabet: usize,
    joint_probs: Vec<f64>,
    joint_weights: Vec<f64>,
}

impl ProductSource {
    /// Wraps explicit joint tables. The table length must be `Nⁿ` for
    /// some alphabet size `N ≥ 2`; entries need not factor as products,
    /// so dependent blocks are representable too.
    pub fn from_joint(n: usize, joint_probs: Vec<f64>, joint_weights: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroBlockLength);
        }
        check_dims(joint_probs.len(), joint_weights.len())?;
        let alphabet = infer_alphabet(joint_probs.len(), n).ok_or(Error::MalformedJointTable {
            len: joint_probs.len(),
            n,
        })?;
        for (index, &value) in joint_probs.iter().enumerate() {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidProbability { index, value });
            }
        }
        for (index, &value) in joint_weights.iter().enumerate() {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidWeight { index, value });
            }
        }
        let sum = comp_sum(joint_probs.iter().copied());
        if (sum - 1.0).abs() > PROB_SUM_TOLERANCE {
            return Err(Error::NotNormalized {
                sum,
                tolerance: PROB_SUM_TOLERANCE,
            });
        }
        Ok(Self {
            n,
            alphabet,
            joint_probs,
            joint_weights,
        })
    }

    /// Block length `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Per-symbol alphabet size `N`.
    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    /// Number of supersymbols, `Nⁿ`.
    pub fn num_supersymbols(&self) -> usize {
        self.joint_probs.len()
    }

    pub fn joint_probs(&self) -> &[f64] {
        &self.joint_probs
    }

    pub fn joint_weights(&self) -> &[f64] {
        &self.joint_weights
    }
}

fn infer_alphabet(len: usize, n: usize) -> Option<usize> {
    if n == 1 {
        return (len >= 2).then_some(len);
    }
    let guess = (len as f64).powf(1.0 / n as f64).round() as usize;
    (guess.saturating_sub(1)..=guess + 1)
        .find(|&candidate| candidate >= 2 && candidate.checked_pow(n as u32) == Some(len))
}

/// Materializes the i.i.d. block extension: `p(𝒙) = Πᵢ p(xᵢ)` and
/// `w(𝒙) = Πᵢ w(xᵢ)` over all `Nⁿ` blocks, capped at
/// [`DEFAULT_SEQ_CAP`] entries.
pub fn extend_source(dist: &Distribution, w: &WeightVector, n: usize) -> Result<ProductSource> {
    extend_source_with_cap(dist, w, n, DEFAULT_SEQ_CAP)
}

/// [`extend_source`] with an explicit entry cap.
pub fn extend_source_with_cap(
    dist: &Distribution,
    w: &WeightVector,
    n: usize,
    cap: usize,
) -> Result<ProductSource> {
    if n == 0 {
        return Err(Error::ZeroBlockLength);
    }
    check_dims(dist.len(), w.len())?;
    let size = checked_size(dist.len(), n, cap)?;

    let probs = dist.probs();
    let weights = w.weights();
    let mut joint_probs = Vec::with_capacity(size);
    let mut joint_weights = Vec::with_capacity(size);
    let mut digits = vec![0_usize; n];
    'blocks: loop {
        let mut p = 1.0;
        let mut wt = 1.0;
        for &d in &digits {
            p *= probs[d];
            wt *= weights[d];
        }
        joint_probs.push(p);
        joint_weights.push(wt);

        // advance the lexicographic odometer, last position fastest
        let mut k = n;
        loop {
            if k == 0 {
                break 'blocks;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < probs.len() {
                break;
            }
            digits[k] = 0;
        }
    }

    Ok(ProductSource {
        n,
        alphabet: dist.len(),
        joint_probs,
        joint_weights,
    })
}

fn checked_size(alphabet: usize, n: usize, cap: usize) -> Result<usize> {
    let too_large = Err(Error::ProductSpaceTooLarge { alphabet, n, cap });
    let Ok(exp) = u32::try_from(n) else {
        return too_large;
    };
    match (alphabet as u128).checked_pow(exp) {
        Some(size) if size <= cap as u128 => Ok(size as usize),
        _ => too_large,
    }
}

/// Per-symbol weighted expected length
/// `L̄_{n,w} = (1/n)·Σ p(𝒙)w(𝒙)l(𝒙)` for a concrete assignment of
/// codeword lengths to supersymbols.
pub fn per_symbol_weighted_length(ps: &ProductSource, lengths: &[u32]) -> Result<f64> {
    check_dims(ps.num_supersymbols(), lengths.len())?;
    validate_lengths(lengths)?;
    let total = comp_sum(
        ps.joint_probs
            .iter()
            .zip(&ps.joint_weights)
            .zip(lengths)
            .map(|((&p, &w), &l)| p * w * f64::from(l)),
    );
    Ok(total / ps.n as f64)
}

/// Per-symbol bounds `𝓛(w,𝑿)/n ≤ L̄*_{n,w} < 𝓛(w,𝑿)/n + H_w(𝑿)/n` from
/// direct summation over the joint table. Valid for dependent blocks too.
pub fn sequence_bounds_general(ps: &ProductSource, base: CodeBase) -> BoundsReport {
    let hw_joint = hw_of(&ps.joint_probs, &ps.joint_weights);
    let measure_joint = iw_measure_given_hw(&ps.joint_probs, &ps.joint_weights, hw_joint, base);
    let scale = ps.n as f64;
    let lower = measure_joint / scale;
    BoundsReport {
        theory: Theory::Iw,
        lower,
        upper: lower + hw_joint / scale,
    }
}

/// Closed-form i.i.d. bounds
/// `H_w^{n−1}·𝓛(w,X) ≤ L̄*_{n,w} < H_w^{n−1}·𝓛(w,X) + H_wⁿ/n`,
/// computed without materializing the product space.
pub fn sequence_bounds_iid(
    dist: &Distribution,
    w: &WeightVector,
    n: usize,
    base: CodeBase,
) -> Result<BoundsReport> {
    if n == 0 {
        return Err(Error::ZeroBlockLength);
    }
    check_dims(dist.len(), w.len())?;
    let hw = hw_of(dist.probs(), w.weights());
    let measure = iw_measure_given_hw(dist.probs(), w.weights(), hw, base);
    let lower = hw.powi(n as i32 - 1) * measure;
    Ok(BoundsReport {
        theory: Theory::Iw,
        lower,
        upper: lower + hw.powi(n as i32) / n as f64,
    })
}

/// Enumerated joint quantities next to their closed forms for i.i.d.
/// blocks: `H_w(𝑿)` vs `H_wⁿ(X)` and `𝓛(w,𝑿)` vs `n·H_w^{n−1}·𝓛(w,X)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lemma1Report {
    pub hw_joint: f64,
    pub hw_power: f64,
    pub l_joint: f64,
    pub l_scaled: f64,
    pub max_abs_err: f64,
}

/// Verifies the product identities by brute-force enumeration of the
/// joint table against the closed forms. `max_abs_err` is the larger of
/// the two discrepancies; at `n = 1` it is exactly zero.
pub fn verify_lemma1(
    dist: &Distribution,
    w: &WeightVector,
    n: usize,
    base: CodeBase,
) -> Result<Lemma1Report> {
    verify_lemma1_with_cap(dist, w, n, base, DEFAULT_SEQ_CAP)
}

/// [`verify_lemma1`] with an explicit entry cap.
pub fn verify_lemma1_with_cap(
    dist: &Distribution,
    w: &WeightVector,
    n: usize,
    base: CodeBase,
    cap: usize,
) -> Result<Lemma1Report> {
    let ps = extend_source_with_cap(dist, w, n, cap)?;
    let hw_joint = hw_of(&ps.joint_probs, &ps.joint_weights);
    let l_joint = iw_measure_given_hw(&ps.joint_probs, &ps.joint_weights, hw_joint, base);

    let hw = hw_of(dist.probs(), w.weights());
    let measure = iw_measure_given_hw(dist.probs(), w.weights(), hw, base);
    let hw_power = hw.powi(n as i32);
    let l_scaled = n as f64 * hw.powi(n as i32 - 1) * measure;

    Ok(Lemma1Report {
        hw_joint,
        hw_power,
        l_joint,
        l_scaled,
        max_abs_err: (hw_joint - hw_power)
            .abs()
            .max((l_joint - l_scaled).abs()),
    })
}
