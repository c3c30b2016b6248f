//! Prefix-code construction for importance-weighted sources.
//!
//! Two routes from a weighted source to a decodable code:
//!
//! - ceiling lengths: round the ideal real-valued lengths
//!   `l̃ᵢ = −log_D(pᵢwᵢ/H_w)` up to integers and assign codewords
//!   canonically ([`integer_lengths`] + [`canonical_code`]);
//! - exact optimization: run Huffman's merge on the combined masses
//!   `qᵢ = pᵢwᵢ`, which minimizes `Σ pᵢwᵢlᵢ` over all Kraft-feasible
//!   integer length vectors ([`huffman_weighted`]).
//!
//! Codewords are strings of ASCII digits, most significant first, which
//! caps the supported code alphabet at `D ≤ 10`.

use std::cmp::Ordering;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{DecodeError, Error, Result};
use crate::measures::{hw_of, validate_lengths};
use crate::source_model::{CodeBase, Distribution, WeightVector};
use crate::util::check_dims;

/// Largest code alphabet representable with single-character digit
/// strings.
pub const MAX_CODE_ALPHABET: u32 = 10;

fn digit_base(base: CodeBase) -> Result<u8> {
    if base.size() > MAX_CODE_ALPHABET {
        return Err(Error::BaseTooLarge(base.size()));
    }
    Ok(base.size() as u8)
}

/// A realized prefix code: per-symbol lengths plus the assigned D-ary
/// codewords.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeSpec {
    base: u32,
    lengths: Vec<u32>,
    codewords: Vec<String>,
}

impl CodeSpec {
    pub fn base(&self) -> CodeBase {
        CodeBase::new(self.base).expect("base validated at construction")
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn codewords(&self) -> &[String] {
        &self.codewords
    }

    /// Number of symbols the code covers.
    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Concatenates the codewords of the given symbol indices.
    pub fn encode(&self, symbols: &[usize]) -> Result<String> {
        let mut out = String::new();
        for &index in symbols {
            let word = self
                .codewords
                .get(index)
                .ok_or(Error::SymbolOutOfRange {
                    index,
                    alphabet: self.codewords.len(),
                })?;
            out.push_str(word);
        }
        Ok(out)
    }

    /// Parses a digit string back into symbol indices. Prefix-freeness
    /// makes the greedy parse the unique inverse of [`CodeSpec::encode`].
    pub fn decode(&self, digits: &str) -> std::result::Result<Vec<usize>, DecodeError> {
        let trie = self.build_trie();
        let mut symbols = Vec::new();
        let mut chars = digits.char_indices().peekable();
        while let Some(&(start, _)) = chars.peek() {
            let mut node = 0_usize;
            loop {
                let Some(&(offset, ch)) = chars.peek() else {
                    return Err(DecodeError::IncompleteCodeword { offset: start });
                };
                let digit = match ch.to_digit(10) {
                    Some(d) if d < self.base => d as usize,
                    _ => {
                        return Err(DecodeError::InvalidDigit {
                            offset,
                            digit: ch,
                            base: self.base,
                        })
                    }
                };
                match trie[node].children[digit] {
                    Some(next) => {
                        chars.next();
                        node = next;
                    }
                    None => return Err(DecodeError::UnrecognizedPrefix { offset: start }),
                }
                if let Some(symbol) = trie[node].symbol {
                    symbols.push(symbol);
                    break;
                }
            }
        }
        Ok(symbols)
    }

    fn build_trie(&self) -> Vec<TrieNode> {
        let fanout = self.base as usize;
        let mut nodes = vec![TrieNode::new(fanout)];
        for (symbol, word) in self.codewords.iter().enumerate() {
            let mut at = 0_usize;
            for byte in word.bytes() {
                let digit = (byte - b'0') as usize;
                at = match nodes[at].children[digit] {
                    Some(next) => next,
                    None => {
                        let next = nodes.len();
                        nodes.push(TrieNode::new(fanout));
                        nodes[at].children[digit] = Some(next);
                        next
                    }
                };
            }
            debug_assert!(nodes[at].symbol.is_none(), "duplicate codeword");
            nodes[at].symbol = Some(symbol);
        }
        nodes
    }
}

struct TrieNode {
    children: Vec<Option<usize>>,
    symbol: Option<usize>,
}

impl TrieNode {
    fn new(fanout: usize) -> Self {
        Self {
            children: vec![None; fanout],
            symbol: None,
        }
    }
}

/// Ideal real-valued lengths `l̃ᵢ = −log_D(pᵢwᵢ/H_w)`. Their Kraft sum is
/// exactly 1 and plugging them into the weighted expected length recovers
/// `𝓛(w,X)`.
pub fn ideal_lengths(dist: &Distribution, w: &WeightVector, base: CodeBase) -> Result<Vec<f64>> {
    check_dims(dist.len(), w.len())?;
    let hw = hw_of(dist.probs(), w.weights());
    let ln_hw = hw.ln();
    let ln_d = base.ln_size();
    // log split into ln p + ln w − ln H_w keeps the result finite even
    // when the product pᵢwᵢ underflows
    Ok(dist
        .probs()
        .iter()
        .zip(w.weights())
        .map(|(&p, &wi)| -((p.ln() + wi.ln() - ln_hw) / ln_d))
        .collect())
}

/// Integer lengths `lᵢ* = ⌈l̃ᵢ*⌉`, clamped to at least 1. The clamp only
/// fires when rounding drives `l̃ᵢ*` to zero or below, which cannot happen
/// in exact arithmetic for two or more symbols.
pub fn integer_lengths(dist: &Distribution, w: &WeightVector, base: CodeBase) -> Result<Vec<u32>> {
    Ok(ideal_lengths(dist, w, base)?
        .into_iter()
        .map(|l| (l.ceil().max(1.0)) as u32)
        .collect())
}

/// Kraft sum `Σ D^{−lᵢ}`; a prefix code with these lengths exists iff the
/// sum is at most 1.
pub fn kraft_sum(lengths: &[u32], base: CodeBase) -> f64 {
    lengths.iter().map(|&l| base.pow_neg(l)).sum()
}

/// Outcome of evaluating the generalized (utility-weighted) Kraft
/// inequality `Σ uᵢD^{−lᵢ} ≤ Σ uᵢpᵢ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneralizedKraftCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Evaluates both sides of the generalized Kraft inequality. The
/// inequality is *not* a validity constraint for prefix codes: a valid
/// binary code with lengths (1,1) violates it for a Bernoulli source with
/// `p₁ > 0.5` and utilities (1,2). This check exists to demonstrate that
/// failure.
pub fn generalized_kraft_check(
    lengths: &[u32],
    u: &WeightVector,
    dist: &Distribution,
    base: CodeBase,
) -> Result<GeneralizedKraftCheck> {
    check_dims(lengths.len(), u.len())?;
    check_dims(dist.len(), u.len())?;
    validate_lengths(lengths)?;
    let lhs: f64 = lengths
        .iter()
        .zip(u.weights())
        .map(|(&l, &ui)| ui * base.pow_neg(l))
        .sum();
    let rhs = hw_of(dist.probs(), u.weights());
    Ok(GeneralizedKraftCheck {
        lhs,
        rhs,
        holds: lhs <= rhs,
    })
}

/// Assigns prefix-free codewords to a feasible length vector in canonical
/// order: symbols sorted by (length, index), codewords numerically
/// increasing. Deterministic, so equal inputs give byte-equal codes.
pub fn canonical_code(lengths: &[u32], base: CodeBase) -> Result<CodeSpec> {
    let d = digit_base(base)?;
    validate_lengths(lengths)?;

    let mut order: Vec<usize> = (0..lengths.len()).collect();
    order.sort_by_key(|&i| (lengths[i], i));

    let mut words: Vec<Vec<u8>> = vec![Vec::new(); lengths.len()];
    let mut current: Vec<u8> = Vec::new();
    for (rank, &symbol) in order.iter().enumerate() {
        let len = lengths[symbol] as usize;
        if rank == 0 {
            current = vec![0; len];
        } else {
            // next code = (previous + 1)·D^(len − previous len), computed
            // digit-wise; a carry out of the top digit means the code
            // space is exhausted, i.e. the Kraft inequality fails
            if !increment(&mut current, d) {
                return Err(Error::KraftViolation {
                    sum: kraft_sum(lengths, base),
                });
            }
            current.resize(len, 0);
        }
        words[symbol] = current.clone();
    }

    let codewords = words
        .iter()
        .map(|w| w.iter().map(|&v| char::from(b'0' + v)).collect())
        .collect();
    Ok(CodeSpec {
        base: base.size(),
        lengths: lengths.to_vec(),
        codewords,
    })
}

fn increment(digits: &mut [u8], d: u8) -> bool {
    for digit in digits.iter_mut().rev() {
        if *digit + 1 < d {
            *digit += 1;
            return true;
        }
        *digit = 0;
    }
    false
}

#[derive(PartialEq)]
struct MergeNode {
    mass: f64,
    id: usize,
}

impl Eq for MergeNode {}

impl Ord for MergeNode {
    fn cmp(&self, other: &Self) -> Ordering {
        // masses are finite; total_cmp gives the numeric order and the id
        // breaks ties deterministically (real symbols before dummies and
        // merged nodes)
        self.mass
            .total_cmp(&other.mass)
            .then(self.id.cmp(&other.id))
    }
}

impl PartialOrd for MergeNode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact minimizer of the weighted expected length `Σ pᵢwᵢlᵢ` over prefix
/// codes: Huffman's merge on the combined masses `qᵢ = pᵢwᵢ`. For
/// `D > 2` the alphabet is padded with zero-mass dummy symbols so every
/// merge combines exactly `D` nodes; dummies are dropped from the
/// returned code. Codewords are assigned canonically from the optimal
/// lengths.
pub fn huffman_weighted(
    dist: &Distribution,
    w: &WeightVector,
    base: CodeBase,
) -> Result<CodeSpec> {
    check_dims(dist.len(), w.len())?;
    let d = digit_base(base)? as usize;
    let n = dist.len();

    let dummies = (n - 1).div_ceil(d - 1) * (d - 1) + 1 - n;
    let mut masses: Vec<f64> = dist
        .probs()
        .iter()
        .zip(w.weights())
        .map(|(&p, &wi)| p * wi)
        .collect();
    masses.resize(n + dummies, 0.0);

    let mut parent: Vec<usize> = vec![usize::MAX; n + dummies];
    let mut heap: BinaryHeap<Reverse<MergeNode>> = masses
        .iter()
        .enumerate()
        .map(|(id, &mass)| Reverse(MergeNode { mass, id }))
        .collect();

    while heap.len() > 1 {
        let merged = parent.len();
        let mut mass = 0.0;
        for _ in 0..d {
            let Reverse(node) = heap.pop().expect("node count is 1 mod (D-1)");
            parent[node.id] = merged;
            mass += node.mass;
        }
        parent.push(usize::MAX);
        heap.push(Reverse(MergeNode { mass, id: merged }));
    }

    let lengths: Vec<u32> = (0..n)
        .map(|leaf| {
            let mut depth = 0;
            let mut node = leaf;
            while parent[node] != usize::MAX {
                node = parent[node];
                depth += 1;
            }
            depth
        })
        .collect();
    canonical_code(&lengths, base)
}
