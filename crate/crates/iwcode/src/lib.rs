//! Importance-weighted source coding toolkit.
//!
//! Classical source coding minimizes the expected codeword length
//! `Σ pᵢlᵢ`. When symbols carry different importance, the cost worth
//! minimizing is the weighted length `Σ pᵢwᵢlᵢ` instead. This crate
//! computes the information measures that bound that cost, builds prefix
//! codes that are optimal under it, and reproduces the numeric
//! comparisons between the competing bound families (Shannon, UISC,
//! importance-weighted, and MIM-weighted).
//!
//! Modules:
//!
//! - [`source_model`]: distributions, weight vectors, and the exponential
//!   message-importance (MIM) weighting family.
//! - [`measures`]: weighted entropy-like measures and the four families of
//!   code-length bounds.
//! - [`codec`]: ideal/integer length assignment, Kraft checks, canonical
//!   codes, weighted Huffman optimization, and encode/decode.
//! - [`sequence`]: supersymbol (block) extension of sources and per-symbol
//!   bounds for sequences.
//! - [`experiments`]: deterministic CSV sweeps over Bernoulli sources.

pub mod codec;
pub mod error;
pub mod experiments;
pub mod measures;
pub mod sequence;
pub mod source_model;

mod util;

pub use codec::{CodeSpec, GeneralizedKraftCheck};
pub use error::{DecodeError, Error, Result};
pub use measures::{BoundsReport, Theory};
pub use sequence::{Lemma1Report, ProductSource};
pub use source_model::{CodeBase, Distribution, ImportanceCoefficient, WeightVector};
