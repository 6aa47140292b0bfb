//! Rect predicates, hyperrectangular domains and the selective receptron that
//! fires exactly inside a domain.
//!
//! A domain with centers `c_i` and widths `w_i` is the product of the interval
//! indicators `f_i = rect((x_i - c_i) / w_i)`. Its complement is a normalized
//! OR of the complements, `1 - Y = N / D` with `N = sum(1 - f_i)` and
//! `D = N + prod(f_i)`. Since `N` is an integer, `1 - Y = h(N - t)` for any
//! `0 < t < 1`, so `Y` is a double-threshold unit whose contributions are
//! `1 - f_i(x_i)`.
//!
//! Boundaries (`|x_i - c_i| / w_i == 1/2`) count as outside.

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::sampling::{self, BoxSampler, EquivalenceReport};
use crate::unit::{check_finite, Receptron, ThresholdMode, WeightFunction};

/// Default upper threshold `t` of constructed selective units.
pub const DEFAULT_T: f64 = 0.5;
/// Default lower threshold `t_l` of constructed selective units.
pub const DEFAULT_T_LOW: f64 = -0.5;

/// Indicator of the open interval `(center - width/2, center + width/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectPredicate {
    center: f64,
    width: f64,
}

impl RectPredicate {
    pub fn new(center: f64, width: f64) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::InvalidCenter(center));
        }
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::InvalidWidth(width));
        }
        Ok(Self { center, width })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn eval(&self, x: f64) -> Result<bool> {
        if !x.is_finite() {
            return Err(Error::NonFinite { index: 0, value: x });
        }
        Ok(self.contains_unchecked(x))
    }

    #[inline]
    pub(crate) fn contains_unchecked(&self, x: f64) -> bool {
        (x - self.center).abs() / self.width < 0.5
    }

    /// True exactly on the two interval endpoints.
    pub fn on_boundary(&self, x: f64) -> bool {
        (x - self.center).abs() / self.width == 0.5
    }
}

/// `rect((x - center) / width)` as a bit.
pub fn rect_eval(p: &RectPredicate, x: f64) -> Result<bool> {
    p.eval(x)
}

/// An axis-aligned box: the product of one rect predicate per axis.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperRectDomain {
    axes: Vec<RectPredicate>,
}

impl HyperRectDomain {
    pub fn new(centers: &[f64], widths: &[f64]) -> Result<Self> {
        if centers.len() != widths.len() {
            return Err(Error::ArityMismatch {
                expected: centers.len(),
                found: widths.len(),
            });
        }
        if centers.is_empty() {
            return Err(Error::Empty);
        }
        let axes = centers
            .iter()
            .zip(widths)
            .map(|(&c, &w)| RectPredicate::new(c, w))
            .collect::<Result<_>>()?;
        Ok(Self { axes })
    }

    /// Equal side `side` on every axis.
    pub fn cube(centers: &[f64], side: f64) -> Result<Self> {
        Self::new(centers, &vec![side; centers.len()])
    }

    pub fn from_predicates(axes: Vec<RectPredicate>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self { axes })
    }

    pub fn arity(&self) -> usize {
        self.axes.len()
    }

    pub fn predicates(&self) -> &[RectPredicate] {
        &self.axes
    }

    pub fn centers(&self) -> Vec<f64> {
        self.axes.iter().map(|p| p.center).collect()
    }

    pub fn widths(&self) -> Vec<f64> {
        self.axes.iter().map(|p| p.width).collect()
    }

    pub fn volume(&self) -> f64 {
        self.axes.iter().map(|p| p.width).product()
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: x.len(),
            });
        }
        check_finite(x)
    }

    /// Product of the axis predicates.
    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        self.check(x)?;
        Ok(self
            .axes
            .iter()
            .zip(x)
            .all(|(p, &xi)| p.contains_unchecked(xi)))
    }

    /// `(N, D)`: violated-axis count and the normalizer `N + prod(f_i)`.
    pub fn violation_count(&self, x: &[f64]) -> Result<(u32, u32)> {
        self.check(x)?;
        let n = self.violations_unchecked(x);
        Ok((n, n + u32::from(n == 0)))
    }

    pub(crate) fn violations_unchecked(&self, x: &[f64]) -> u32 {
        self.axes
            .iter()
            .zip(x)
            .filter(|(p, &xi)| !p.contains_unchecked(xi))
            .count() as u32
    }

    pub fn on_boundary(&self, x: &[f64]) -> bool {
        self.axes.iter().zip(x).any(|(p, &xi)| p.on_boundary(xi))
    }

    /// Bounds extending one width beyond the domain on each side.
    pub fn padded_bounds(&self) -> Vec<(f64, f64)> {
        self.axes
            .iter()
            .map(|p| (p.center - p.width, p.center + p.width))
            .collect()
    }
}

pub fn domain_contains(d: &HyperRectDomain, x: &[f64]) -> Result<bool> {
    d.contains(x)
}

pub fn violation_count(d: &HyperRectDomain, x: &[f64]) -> Result<(u32, u32)> {
    d.violation_count(x)
}

/// The selective weight `w(x) = (1 - f(x)) / x` for one axis.
pub fn selective_weight(p: RectPredicate) -> WeightFunction {
    WeightFunction::SelectiveRect(p)
}

pub(crate) fn check_selective_thresholds(t: f64, t_low: f64) -> Result<()> {
    // t = 1 would accept N = 1 under the (t_l, t_h] interval.
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidThreshold(format!(
            "t must lie in (0, 1), got {t}"
        )));
    }
    if t_low.is_nan() || t_low >= 0.0 {
        return Err(Error::InvalidThreshold(format!(
            "t_l must be negative, got {t_low}"
        )));
    }
    Ok(())
}

/// Builds the unit with selective weights on every axis and `Double(t_l, t)`.
pub fn build_selective_receptron(d: &HyperRectDomain, t: f64, t_low: f64) -> Result<Receptron> {
    check_selective_thresholds(t, t_low)?;
    selective_receptron_with_mode(d, ThresholdMode::double(t_low, t)?)
}

/// [`build_selective_receptron`] with the default thresholds.
pub fn selective_receptron(d: &HyperRectDomain) -> Receptron {
    build_selective_receptron(d, DEFAULT_T, DEFAULT_T_LOW).expect("default thresholds are valid")
}

/// Selective weights with an arbitrary activation rule. No range check is
/// made on the thresholds, so the result need not match the domain.
pub fn selective_receptron_with_mode(d: &HyperRectDomain, mode: ThresholdMode) -> Result<Receptron> {
    let weights = d.axes.iter().copied().map(selective_weight).collect();
    Receptron::new(weights, mode)
}

/// Checks `unit` against `d.contains` on `count` sampled off-boundary points.
pub fn verify_unit(
    d: &HyperRectDomain,
    unit: &Receptron,
    sampler: &BoxSampler,
    count: u64,
    exec: Exec,
) -> EquivalenceReport {
    let oracle = |x: &[f64]| d.contains(x);
    let candidate = |x: &[f64]| unit.activate(x);
    sampling::compare(
        sampler,
        count,
        &|x| d.on_boundary(x),
        &oracle,
        &[&candidate],
        exec,
    )
}

/// Builds the default selective unit for `d` and checks it against the
/// rect-product oracle.
pub fn verify_equivalence(d: &HyperRectDomain, sampler: &BoxSampler, count: u64) -> EquivalenceReport {
    verify_equivalence_with(d, sampler, count, Exec::default())
}

pub fn verify_equivalence_with(
    d: &HyperRectDomain,
    sampler: &BoxSampler,
    count: u64,
    exec: Exec,
) -> EquivalenceReport {
    verify_unit(d, &selective_receptron(d), sampler, count, exec)
}
