//! Seeded point sampling and the oracle-comparison harness.
//!
//! Point `i` is drawn from its own ChaCha stream (`seed`, stream `i`), so a
//! sample set is identical no matter how the work is split across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::par::{self, Exec};

/// Uniform sampler over an axis-aligned box.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxSampler {
    bounds: Vec<(f64, f64)>,
    seed: u64,
}

impl BoxSampler {
    /// # Panics
    /// If any bound is non-finite or has `lo > hi`.
    pub fn new(bounds: Vec<(f64, f64)>, seed: u64) -> Self {
        for &(lo, hi) in &bounds {
            assert!(
                lo.is_finite() && hi.is_finite() && lo <= hi,
                "invalid sampling bound {lo}..{hi}"
            );
        }
        Self { bounds, seed }
    }

    pub fn cube(arity: usize, lo: f64, hi: f64, seed: u64) -> Self {
        Self::new(vec![(lo, hi); arity], seed)
    }

    pub fn arity(&self) -> usize {
        self.bounds.len()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    /// Point number `index`. Draws again from the same stream while `reject`
    /// holds (used to skip points exactly on a domain boundary).
    pub fn point(&self, index: u64, reject: impl Fn(&[f64]) -> bool) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        loop {
            let x: Vec<f64> = self
                .bounds
                .iter()
                .map(|&(lo, hi)| lo + (hi - lo) * rng.random::<f64>())
                .collect();
            if !reject(&x) {
                return x;
            }
        }
    }
}

/// A point where some evaluator disagreed with the oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub index: u64,
    pub point: Vec<f64>,
    pub expected: bool,
    /// Outputs of the candidates, in the order they were given.
    pub actual: Vec<bool>,
}

/// Outcome of an oracle comparison.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EquivalenceReport {
    pub tested: u64,
    pub mismatches: u64,
    /// Evaluation errors (counted separately from mismatches).
    pub errors: u64,
    /// The lowest-index counterexamples, at most [`MAX_COUNTEREXAMPLES`].
    pub counterexamples: Vec<Counterexample>,
}

pub const MAX_COUNTEREXAMPLES: usize = 16;

impl EquivalenceReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches == 0 && self.errors == 0
    }
}

/// Shared signature for oracle and candidate evaluators.
pub type Evaluator<'a> = &'a (dyn Fn(&[f64]) -> Result<bool> + Sync);

const CHUNK: u64 = 4096;

/// Draws `count` points and checks every candidate against `oracle`.
pub fn compare(
    sampler: &BoxSampler,
    count: u64,
    reject: &(dyn Fn(&[f64]) -> bool + Sync),
    oracle: Evaluator<'_>,
    candidates: &[Evaluator<'_>],
    exec: Exec,
) -> EquivalenceReport {
    let chunks = count.div_ceil(CHUNK) as usize;
    let parts = par::map_range(exec, chunks, |c| {
        let start = c as u64 * CHUNK;
        let end = (start + CHUNK).min(count);
        let mut part = EquivalenceReport::default();
        for index in start..end {
            let x = sampler.point(index, reject);
            part.tested += 1;
            let expected = oracle(&x);
            let actual: Result<Vec<bool>> = candidates.iter().map(|f| f(&x)).collect();
            match (expected, actual) {
                (Ok(expected), Ok(actual)) => {
                    if actual.iter().any(|&a| a != expected) {
                        part.mismatches += 1;
                        if part.counterexamples.len() < MAX_COUNTEREXAMPLES {
                            part.counterexamples.push(Counterexample {
                                index,
                                point: x,
                                expected,
                                actual,
                            });
                        }
                    }
                }
                _ => part.errors += 1,
            }
        }
        part
    });

    let mut report = EquivalenceReport::default();
    for part in parts {
        report.tested += part.tested;
        report.mismatches += part.mismatches;
        report.errors += part.errors;
        let room = MAX_COUNTEREXAMPLES - report.counterexamples.len();
        report
            .counterexamples
            .extend(part.counterexamples.into_iter().take(room));
    }
    report
}
