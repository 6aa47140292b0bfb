//! The receptron unit: a weighted sum whose weights are functions of the
//! input vector, followed by a single or double threshold.
//!
//! Every weight is evaluated through its *contribution* `x_j * w_j(x)` rather
//! than the raw weight. For selective weights `w_j(x_j) = (1 - f_j(x_j)) / x_j`
//! the contribution is `1 - f_j(x_j)`, which stays defined at `x_j = 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::domains::RectPredicate;
use crate::error::{Error, Result};

/// A finite analog input vector.
#[derive(Debug, Clone, PartialEq)]
pub struct InputVector(Vec<f64>);

impl InputVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        check_finite(&values)?;
        Ok(Self(values))
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for InputVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for InputVector {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

pub(crate) fn check_finite(x: &[f64]) -> Result<()> {
    match x.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite {
            index,
            value: x[index],
        }),
        None => Ok(()),
    }
}

/// Index of a binary input vector, input 1 in the least significant bit.
pub fn binary_pattern(x: &[f64]) -> Result<u64> {
    let mut pattern = 0u64;
    for (index, &value) in x.iter().enumerate() {
        if value == 1.0 {
            pattern |= 1 << index;
        } else if value != 0.0 {
            return Err(Error::NotBinary { index, value });
        }
    }
    Ok(pattern)
}

/// Binary input vector for `pattern`, input 1 taken from the least significant bit.
pub fn pattern_inputs(pattern: u64, arity: usize) -> Vec<f64> {
    (0..arity)
        .map(|j| if pattern >> j & 1 == 1 { 1.0 } else { 0.0 })
        .collect()
}

/// A weight that depends on the whole input vector.
///
/// Implementors return the summand `x_j * w_j(x)` directly.
pub trait VectorWeight: fmt::Debug + Send + Sync {
    fn contribution(&self, x: &[f64]) -> Result<f64>;
}

/// Weight table indexed by digital input pattern.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LookupTable {
    entries: BTreeMap<u64, f64>,
}

impl LookupTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, pattern: u64, weight: f64) -> &mut Self {
        self.entries.insert(pattern, weight);
        self
    }

    pub fn get(&self, pattern: u64) -> Option<f64> {
        self.entries.get(&pattern).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.entries.iter().map(|(&p, &w)| (p, w))
    }
}

impl FromIterator<(u64, f64)> for LookupTable {
    fn from_iter<I: IntoIterator<Item = (u64, f64)>>(iter: I) -> Self {
        Self {
            entries: iter.into_iter().collect(),
        }
    }
}

/// A weight function `w_j(x)`.
#[derive(Debug, Clone)]
pub enum WeightFunction {
    /// Input-independent weight, as in a classical perceptron.
    Constant(f64),
    /// `w(x_j) = (1 - rect((x_j - c) / width)) / x_j`.
    SelectiveRect(RectPredicate),
    /// Weight chosen by the digital input pattern of the whole vector.
    Lookup(Arc<LookupTable>),
    /// Arbitrary full-vector weight.
    Vector(Arc<dyn VectorWeight>),
}

impl WeightFunction {
    /// The summand `x_j * w_j(x)` for input `axis`.
    pub fn contribution(&self, x: &[f64], axis: usize) -> Result<f64> {
        let xj = x[axis];
        match self {
            Self::Constant(c) => Ok(c * xj),
            Self::SelectiveRect(p) => Ok(if p.contains_unchecked(xj) { 0.0 } else { 1.0 }),
            Self::Lookup(table) => {
                let pattern = binary_pattern(x)?;
                let w = table
                    .get(pattern)
                    .ok_or(Error::LookupMiss { axis, pattern })?;
                Ok(xj * w)
            }
            Self::Vector(f) => f.contribution(x),
        }
    }

    /// The raw weight value `w_j(x)`. Undefined at `x_j = 0` for product-form
    /// kinds, where only the contribution exists.
    pub fn raw(&self, x: &[f64], axis: usize) -> Result<f64> {
        match self {
            Self::Constant(c) => Ok(*c),
            Self::Lookup(table) => {
                let pattern = binary_pattern(x)?;
                table.get(pattern).ok_or(Error::LookupMiss { axis, pattern })
            }
            Self::SelectiveRect(_) | Self::Vector(_) => {
                let xj = x[axis];
                if xj == 0.0 {
                    return Err(Error::SingularWeight);
                }
                Ok(self.contribution(x, axis)? / xj)
            }
        }
    }
}

/// Activation rule applied to the weighted sum `S`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdMode {
    /// Active iff `S > t_s`.
    Single(f64),
    /// Active iff `low < S <= high`.
    Double { low: f64, high: f64 },
}

impl ThresholdMode {
    pub fn single(t_s: f64) -> Result<Self> {
        if t_s.is_nan() {
            return Err(Error::InvalidThreshold("t_s is NaN".into()));
        }
        Ok(Self::Single(t_s))
    }

    /// `high` may be `+inf`, which makes this mode behave like `Single(low)`.
    pub fn double(low: f64, high: f64) -> Result<Self> {
        if low.is_nan() || high.is_nan() || low >= high {
            return Err(Error::InvalidThreshold(format!(
                "double threshold needs t_l < t_h, got t_l = {low}, t_h = {high}"
            )));
        }
        Ok(Self::Double { low, high })
    }

    pub fn fires(&self, s: f64) -> bool {
        match *self {
            Self::Single(t) => s > t,
            Self::Double { low, high } => low < s && s <= high,
        }
    }
}

/// Heaviside step with `h(0) = 0`.
pub fn heaviside(u: f64) -> Result<bool> {
    if !u.is_finite() {
        return Err(Error::NonFinite { index: 0, value: u });
    }
    Ok(u > 0.0)
}

pub fn negated_heaviside(u: f64) -> Result<bool> {
    heaviside(u).map(|h| !h)
}

/// A threshold unit with input-dependent weights.
#[derive(Debug, Clone)]
pub struct Receptron {
    weights: Vec<WeightFunction>,
    mode: ThresholdMode,
}

impl Receptron {
    pub fn new(weights: Vec<WeightFunction>, mode: ThresholdMode) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self { weights, mode })
    }

    /// Classical perceptron: constant weights and a single threshold.
    pub fn perceptron(coefficients: &[f64], t_s: f64) -> Result<Self> {
        let weights = coefficients
            .iter()
            .map(|&c| WeightFunction::Constant(c))
            .collect();
        Self::new(weights, ThresholdMode::single(t_s)?)
    }

    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[WeightFunction] {
        &self.weights
    }

    pub fn mode(&self) -> ThresholdMode {
        self.mode
    }

    pub fn with_mode(mut self, mode: ThresholdMode) -> Self {
        self.mode = mode;
        self
    }

    /// `S(x) = sum_j x_j w_j(x)`.
    pub fn weighted_sum(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: x.len(),
            });
        }
        check_finite(x)?;
        self.weights
            .iter()
            .enumerate()
            .try_fold(0.0, |s, (axis, w)| Ok(s + w.contribution(x, axis)?))
    }

    pub fn activate(&self, x: &[f64]) -> Result<bool> {
        Ok(self.mode.fires(self.weighted_sum(x)?))
    }
}
