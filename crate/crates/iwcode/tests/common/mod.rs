//! Shared generators and independent oracles for the integration suites.
//!
//! Each test target compiles this module separately, so not every helper
//! is used everywhere.
#![allow(dead_code)]

use iwcode::measures::weighted_expected_length;
use iwcode::{CodeBase, Distribution, WeightVector};
use rand::Rng;

/// Random distribution with entries bounded away from zero, normalized to
/// unit sum.
pub fn random_distribution<R: Rng>(rng: &mut R, n: usize) -> Distribution {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let sum: f64 = raw.iter().sum();
    Distribution::new(raw.into_iter().map(|x| x / sum).collect()).expect("normalized by sum")
}

/// Random weights spread over a few orders of magnitude.
pub fn random_weight_vector<R: Rng>(rng: &mut R, n: usize) -> WeightVector {
    let weights: Vec<f64> = (0..n)
        .map(|_| rng.gen_range(-3.0_f64..3.0).exp())
        .collect();
    WeightVector::new(weights).expect("positive by construction")
}

/// Samples a symbol stream by inverse CDF.
pub fn sample_stream<R: Rng>(rng: &mut R, dist: &Distribution, len: usize) -> Vec<usize> {
    let mut cumulative = Vec::with_capacity(dist.len());
    let mut acc = 0.0;
    for &p in dist.probs() {
        acc += p;
        cumulative.push(acc);
    }
    (0..len)
        .map(|_| {
            let u: f64 = rng.gen();
            cumulative
                .iter()
                .position(|&c| u < c)
                .unwrap_or(dist.len() - 1)
        })
        .collect()
}

/// Exhaustive minimum of the weighted expected length over all integer
/// length vectors with `1 ≤ lᵢ ≤ max_len` satisfying the Kraft
/// inequality. Brute force, independent of the Huffman construction; the
/// cost of each candidate is evaluated with the same public cost function
/// so equal vectors produce bit-equal costs.
pub fn exhaustive_min_cost(
    dist: &Distribution,
    w: &WeightVector,
    base: CodeBase,
    max_len: u32,
) -> (f64, Vec<u32>) {
    let mut search = LengthSearch {
        dist,
        w,
        max_len,
        radix: f64::from(base.size()),
        smallest_term: f64::from(base.size()).powi(-(max_len as i32)),
        lengths: vec![1_u32; dist.len()],
        best_cost: f64::INFINITY,
        best_lengths: Vec::new(),
    };
    search.descend(0, 0.0);
    assert!(
        search.best_cost.is_finite(),
        "no Kraft-feasible vector within max_len"
    );
    (search.best_cost, search.best_lengths)
}

struct LengthSearch<'a> {
    dist: &'a Distribution,
    w: &'a WeightVector,
    max_len: u32,
    radix: f64,
    smallest_term: f64,
    lengths: Vec<u32>,
    best_cost: f64,
    best_lengths: Vec<u32>,
}

impl LengthSearch<'_> {
    fn descend(&mut self, level: usize, kraft_so_far: f64) {
        if level == self.lengths.len() {
            let cost = weighted_expected_length(self.dist, self.w, &self.lengths)
                .expect("valid candidate");
            if cost < self.best_cost {
                self.best_cost = cost;
                self.best_lengths = self.lengths.clone();
            }
            return;
        }
        let remaining = (self.lengths.len() - level - 1) as f64;
        for l in 1..=self.max_len {
            let kraft = kraft_so_far + self.radix.powi(-(l as i32));
            if kraft + remaining * self.smallest_term > 1.0 {
                continue;
            }
            self.lengths[level] = l;
            self.descend(level + 1, kraft);
        }
    }
}

/// O(N²) prefix-freeness check on realized codewords.
pub fn assert_prefix_free(codewords: &[String]) {
    for (i, a) in codewords.iter().enumerate() {
        for (j, b) in codewords.iter().enumerate() {
            if i != j {
                assert!(
                    !b.starts_with(a.as_str()),
                    "codeword {a:?} is a prefix of {b:?}"
                );
            }
        }
    }
}
