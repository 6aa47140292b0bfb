//! Boolean structure over rect predicates, the arithmetic OR identity, and
//! digital truth tables.

mod separability;
mod truth;

pub use separability::{census, census_with, is_linearly_separable, Census, MAX_CENSUS_ARITY, MAX_SEPARABILITY_ARITY};
pub use truth::{completeness_failures, synthesize_digital, TruthTable};

use std::sync::Arc;

use crate::domains::{check_selective_thresholds, RectPredicate, DEFAULT_T_LOW};
use crate::error::{Error, Result};
use crate::unit::{check_finite, Receptron, ThresholdMode, VectorWeight, WeightFunction};

/// A logic function `F` of rect predicates on individual axes.
#[derive(Debug, Clone, PartialEq)]
pub enum BoolExpr {
    Pred { axis: usize, pred: RectPredicate },
    And(Vec<BoolExpr>),
    Or(Vec<BoolExpr>),
    Not(Box<BoolExpr>),
}

impl BoolExpr {
    pub fn pred(axis: usize, center: f64, width: f64) -> Result<Self> {
        Ok(Self::Pred {
            axis,
            pred: RectPredicate::new(center, width)?,
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: BoolExpr) -> Self {
        Self::Not(Box::new(e))
    }

    /// One more than the largest axis index used.
    pub fn arity(&self) -> usize {
        match self {
            Self::Pred { axis, .. } => axis + 1,
            Self::And(children) | Self::Or(children) => {
                children.iter().map(Self::arity).max().unwrap_or(0)
            }
            Self::Not(child) => child.arity(),
        }
    }

    /// Rejects empty `And`/`Or` nodes.
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Pred { .. } => Ok(()),
            Self::And(children) | Self::Or(children) => {
                if children.is_empty() {
                    return Err(Error::InvalidExpr("empty and/or node".into()));
                }
                children.iter().try_for_each(Self::validate)
            }
            Self::Not(child) => child.validate(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> Result<bool> {
        self.validate()?;
        if x.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: x.len(),
            });
        }
        check_finite(x)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64]) -> bool {
        match self {
            Self::Pred { axis, pred } => pred.contains_unchecked(x[*axis]),
            Self::And(children) => children.iter().all(|c| c.eval_unchecked(x)),
            Self::Or(children) => children.iter().any(|c| c.eval_unchecked(x)),
            Self::Not(child) => !child.eval_unchecked(x),
        }
    }

    /// True when `x` lies on the edge of any leaf predicate.
    pub fn on_boundary(&self, x: &[f64]) -> bool {
        match self {
            Self::Pred { axis, pred } => x.get(*axis).is_some_and(|&v| pred.on_boundary(v)),
            Self::And(children) | Self::Or(children) => children.iter().any(|c| c.on_boundary(x)),
            Self::Not(child) => child.on_boundary(x),
        }
    }

    /// Leaf predicates in left-to-right order.
    pub fn predicates(&self) -> Vec<(usize, RectPredicate)> {
        let mut out = Vec::new();
        self.collect_predicates(&mut out);
        out
    }

    fn collect_predicates(&self, out: &mut Vec<(usize, RectPredicate)>) {
        match self {
            Self::Pred { axis, pred } => out.push((*axis, *pred)),
            Self::And(children) | Self::Or(children) => {
                children.iter().for_each(|c| c.collect_predicates(out))
            }
            Self::Not(child) => child.collect_predicates(out),
        }
    }

    /// Per-axis predicates if this is a conjunction of predicates on distinct axes.
    fn as_box(&self) -> Option<Vec<Option<RectPredicate>>> {
        let mut axes = vec![None; self.arity()];
        fn walk(e: &BoolExpr, axes: &mut [Option<RectPredicate>]) -> bool {
            match e {
                BoolExpr::Pred { axis, pred } => axes[*axis].replace(*pred).is_none(),
                BoolExpr::And(children) => children.iter().all(|c| walk(c, axes)),
                _ => false,
            }
        }
        walk(self, &mut axes).then_some(axes)
    }
}

pub fn eval_expr(e: &BoolExpr, x: &[f64]) -> Result<bool> {
    e.eval(x)
}

fn check_bits(bits: &[u8]) -> Result<()> {
    if bits.is_empty() {
        return Err(Error::Empty);
    }
    match bits.iter().find(|&&b| b > 1) {
        Some(&b) => Err(Error::NonBinaryValue(b)),
        None => Ok(()),
    }
}

/// Numerator `sum f_i` and denominator `sum f_i + prod (1 - f_i)` of the
/// normalized OR.
pub fn normalized_or_terms(bits: &[u8]) -> Result<(u32, u32)> {
    check_bits(bits)?;
    let sum: u32 = bits.iter().map(|&b| u32::from(b)).sum();
    let complement_product: u32 = bits.iter().map(|&b| 1 - u32::from(b)).product();
    Ok((sum, sum + complement_product))
}

/// `sum f_i / (sum f_i + prod (1 - f_i))`, which is exactly 0 or 1.
pub fn normalized_or(bits: &[u8]) -> Result<u8> {
    let (num, den) = normalized_or_terms(bits)?;
    let ratio = f64::from(num) / f64::from(den);
    debug_assert!(ratio == 0.0 || ratio == 1.0);
    Ok(ratio as u8)
}

/// `prod f_i` computed as `1 - OR(1 - f_i)`.
pub fn demorgan_product(bits: &[u8]) -> Result<u8> {
    check_bits(bits)?;
    let complements: Vec<u8> = bits.iter().map(|&b| 1 - b).collect();
    let y = 1 - normalized_or(&complements)?;
    debug_assert_eq!(y, bits.iter().product::<u8>());
    Ok(y)
}

/// Full-vector weight contributing `1 - F(x)`.
#[derive(Debug)]
struct ExprComplement {
    expr: BoolExpr,
}

impl VectorWeight for ExprComplement {
    fn contribution(&self, x: &[f64]) -> Result<f64> {
        Ok(if self.expr.eval_unchecked(x) { 0.0 } else { 1.0 })
    }
}

/// A single unit that fires exactly where `e` holds.
///
/// Conjunctions of predicates on distinct axes get one selective weight per
/// constrained axis. Anything else gets a full-vector weight on input 0 with
/// contribution `1 - F(x)` and zero constants elsewhere.
pub fn build_expr_receptron(e: &BoolExpr, t: f64) -> Result<Receptron> {
    e.validate()?;
    check_selective_thresholds(t, DEFAULT_T_LOW)?;
    let mode = ThresholdMode::double(DEFAULT_T_LOW, t)?;
    let weights = match e.as_box() {
        Some(axes) => axes
            .into_iter()
            .map(|p| match p {
                Some(p) => WeightFunction::SelectiveRect(p),
                None => WeightFunction::Constant(0.0),
            })
            .collect(),
        None => {
            let mut weights = vec![WeightFunction::Constant(0.0); e.arity()];
            weights[0] = WeightFunction::Vector(Arc::new(ExprComplement { expr: e.clone() }));
            weights
        }
    };
    Receptron::new(weights, mode)
}
