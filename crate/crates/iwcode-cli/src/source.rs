//! Source specification: a JSON file or inline flags, resolved into a
//! validated distribution plus one of three weighting modes.

use std::fmt;
use std::path::PathBuf;

use clap::Args;
use serde::Deserialize;

use iwcode::source_model::{mim_utilities, mim_weights};
use iwcode::{CodeBase, Distribution, ImportanceCoefficient, WeightVector};

use crate::{CliError, Result};

/// JSON source file: `{"probs": [...], "weights": [...]?, "omega": ω?,
/// "base": D?}`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SourceFile {
    probs: Option<Vec<f64>>,
    weights: Option<Vec<f64>>,
    omega: Option<f64>,
    base: Option<u32>,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// JSON source file with probs and optional weights/omega/base
    #[arg(long, value_name = "PATH")]
    pub source: Option<PathBuf>,

    /// Inline probabilities (alternative to --source)
    #[arg(long, value_delimiter = ',', value_name = "P1,P2,...")]
    pub probs: Option<Vec<f64>>,

    /// Explicit importance weights, one per symbol
    #[arg(long, value_delimiter = ',', value_name = "W1,W2,...", allow_negative_numbers = true)]
    pub weights: Option<Vec<f64>>,

    /// MIM importance coefficient (mutually exclusive with --weights)
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,

    /// Code alphabet size D (default 2)
    #[arg(long, value_name = "D")]
    pub base: Option<u32>,
}

/// How the source is weighted.
#[derive(Debug, Clone)]
pub enum Weighting {
    Explicit(WeightVector),
    Mim(ImportanceCoefficient),
    Uniform,
}

impl fmt::Display for Weighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weighting::Explicit(_) => write!(f, "explicit"),
            Weighting::Mim(omega) => write!(f, "mim(omega={})", omega.value()),
            Weighting::Uniform => write!(f, "uniform"),
        }
    }
}

impl Weighting {
    /// Weights to feed the I-W operations.
    pub fn effective_weights(&self, dist: &Distribution) -> WeightVector {
        match self {
            Weighting::Explicit(w) => w.clone(),
            Weighting::Mim(omega) => mim_weights(dist, *omega),
            Weighting::Uniform => WeightVector::ones(dist.len()),
        }
    }

    /// Utilities to feed the UISC bounds.
    pub fn uisc_utilities(&self, dist: &Distribution) -> WeightVector {
        match self {
            Weighting::Explicit(w) => w.clone(),
            Weighting::Mim(omega) => mim_utilities(dist, *omega),
            Weighting::Uniform => WeightVector::ones(dist.len()),
        }
    }

    pub fn omega(&self) -> Option<ImportanceCoefficient> {
        match self {
            Weighting::Mim(omega) => Some(*omega),
            _ => None,
        }
    }
}

/// A fully resolved source.
pub struct ResolvedSource {
    pub dist: Distribution,
    pub weighting: Weighting,
    pub base: CodeBase,
}

impl SourceArgs {
    /// Merges the file (if any) with the inline flags. Inline flags
    /// override file fields; `--probs` and `--source` are mutually
    /// exclusive, as are weights and omega after the merge.
    pub fn resolve(&self) -> Result<ResolvedSource> {
        let file = match &self.source {
            Some(path) => {
                if self.probs.is_some() {
                    return Err(CliError::Input(
                        "pass either --source or --probs, not both".into(),
                    ));
                }
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Input(format!("cannot read {}: {e}", path.display()))
                })?;
                serde_json::from_str::<SourceFile>(&text).map_err(|e| {
                    CliError::Input(format!("cannot parse {}: {e}", path.display()))
                })?
            }
            None => SourceFile::default(),
        };

        let probs = self
            .probs
            .clone()
            .or(file.probs)
            .ok_or_else(|| CliError::Input("no source given: use --source or --probs".into()))?;
        let dist = Distribution::new(probs)
            .map_err(|e| CliError::Input(format!("invalid probs: {e}")))?;

        let weights = self.weights.clone().or(file.weights);
        let omega = self.omega.or(file.omega);
        let weighting = match (weights, omega) {
            (Some(_), Some(_)) => {
                return Err(CliError::Input(
                    "ambiguous weighting: give weights or omega, not both".into(),
                ))
            }
            (Some(w), None) => {
                let w = WeightVector::new(w)
                    .map_err(|e| CliError::Input(format!("invalid weights: {e}")))?;
                if w.len() != dist.len() {
                    return Err(CliError::Input(format!(
                        "weights length {} does not match probs length {}",
                        w.len(),
                        dist.len()
                    )));
                }
                Weighting::Explicit(w)
            }
            (None, Some(omega)) => Weighting::Mim(
                ImportanceCoefficient::new(omega)
                    .map_err(|e| CliError::Input(format!("invalid omega: {e}")))?,
            ),
            (None, None) => Weighting::Uniform,
        };

        let base = CodeBase::new(self.base.or(file.base).unwrap_or(2))
            .map_err(|e| CliError::Input(format!("invalid base: {e}")))?;

        Ok(ResolvedSource {
            dist,
            weighting,
            base,
        })
    }
}
