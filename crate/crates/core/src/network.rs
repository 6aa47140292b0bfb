//! Feed-forward networks of receptrons and the two ways of realizing a union
//! of closed domains: `m` selective units feeding an OR unit, or one unit with
//! `n * m` fanned-out inputs.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::domains::{check_selective_thresholds, selective_receptron, HyperRectDomain, DEFAULT_T_LOW};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::sampling::{self, BoxSampler, EquivalenceReport};
use crate::unit::{check_finite, Receptron, ThresholdMode, VectorWeight, WeightFunction};

/// Where a unit input comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// External analog input `i`.
    Input(usize),
    /// Output bit of unit `k`, fed as 0.0 or 1.0.
    Unit(usize),
}

#[derive(Debug, Clone)]
pub struct Network {
    inputs: usize,
    units: Vec<Receptron>,
    wiring: Vec<Vec<Source>>,
    outputs: Vec<usize>,
    /// Evaluation order; every unit appears after all of its sources.
    order: Vec<usize>,
}

impl Network {
    /// Validates the wiring and fixes a topological evaluation order.
    pub fn new(
        inputs: usize,
        units: Vec<Receptron>,
        wiring: Vec<Vec<Source>>,
        outputs: Vec<usize>,
    ) -> Result<Self> {
        if inputs == 0 {
            return Err(Error::Wiring("network needs at least one input".into()));
        }
        if wiring.len() != units.len() {
            return Err(Error::Wiring(format!(
                "{} units but {} wiring lists",
                units.len(),
                wiring.len()
            )));
        }
        if outputs.is_empty() {
            return Err(Error::Wiring("network needs at least one output".into()));
        }
        if let Some(&bad) = outputs.iter().find(|&&o| o >= units.len()) {
            return Err(Error::Wiring(format!("output refers to missing unit {bad}")));
        }

        let mut indegree = vec![0usize; units.len()];
        let mut consumers = vec![Vec::new(); units.len()];
        for (k, (unit, sources)) in units.iter().zip(&wiring).enumerate() {
            if sources.len() != unit.arity() {
                return Err(Error::Wiring(format!(
                    "unit {k} has arity {} but {} sources",
                    unit.arity(),
                    sources.len()
                )));
            }
            for source in sources {
                match *source {
                    Source::Input(i) if i >= inputs => {
                        return Err(Error::Wiring(format!("unit {k} reads missing input {i}")))
                    }
                    Source::Unit(u) if u >= units.len() => {
                        return Err(Error::Wiring(format!("unit {k} reads missing unit {u}")))
                    }
                    Source::Unit(u) => {
                        indegree[k] += 1;
                        consumers[u].push(k);
                    }
                    Source::Input(_) => {}
                }
            }
        }

        // Kahn's algorithm; ties broken by unit index.
        let mut ready: VecDeque<usize> = (0..units.len()).filter(|&k| indegree[k] == 0).collect();
        let mut order = Vec::with_capacity(units.len());
        while let Some(k) = ready.pop_front() {
            order.push(k);
            for &c in &consumers[k] {
                indegree[c] -= 1;
                if indegree[c] == 0 {
                    ready.push_back(c);
                }
            }
        }
        if order.len() != units.len() {
            return Err(Error::Wiring("wiring contains a cycle".into()));
        }

        Ok(Self {
            inputs,
            units,
            wiring,
            outputs,
            order,
        })
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn units(&self) -> &[Receptron] {
        &self.units
    }

    pub fn wiring(&self) -> &[Vec<Source>] {
        &self.wiring
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn eval(&self, x: &[f64]) -> Result<Vec<bool>> {
        if x.len() != self.inputs {
            return Err(Error::ArityMismatch {
                expected: self.inputs,
                found: x.len(),
            });
        }
        check_finite(x)?;
        let mut bits = vec![false; self.units.len()];
        let mut args = Vec::new();
        for &k in &self.order {
            args.clear();
            args.extend(self.wiring[k].iter().map(|s| match *s {
                Source::Input(i) => x[i],
                Source::Unit(u) => f64::from(u8::from(bits[u])),
            }));
            bits[k] = self.units[k].activate(&args)?;
        }
        Ok(self.outputs.iter().map(|&o| bits[o]).collect())
    }
}

pub fn eval_network(net: &Network, x: &[f64]) -> Result<Vec<bool>> {
    net.eval(x)
}

fn shared_arity(domains: &[HyperRectDomain]) -> Result<usize> {
    let first = domains.first().ok_or(Error::Empty)?;
    let n = first.arity();
    match domains.iter().find(|d| d.arity() != n) {
        Some(d) => Err(Error::ArityMismatch {
            expected: n,
            found: d.arity(),
        }),
        None => Ok(n),
    }
}

/// Digital OR of `m` bits: unit constant weights, `Single(1/2)`.
pub fn or_unit(m: usize) -> Result<Receptron> {
    Receptron::new(
        vec![WeightFunction::Constant(1.0); m],
        ThresholdMode::single(0.5)?,
    )
}

/// `m` selective units on the external input, then one OR unit.
pub fn build_disjunction_network(domains: &[HyperRectDomain]) -> Result<Network> {
    let n = shared_arity(domains)?;
    let m = domains.len();
    let mut units: Vec<Receptron> = domains.iter().map(selective_receptron).collect();
    let mut wiring: Vec<Vec<Source>> = vec![(0..n).map(Source::Input).collect(); m];
    units.push(or_unit(m)?);
    wiring.push((0..m).map(Source::Unit).collect());
    Network::new(n, units, wiring, vec![m])
}

/// Smallest violation count over the domains, each read from its own copy of
/// the inputs.
#[derive(Debug)]
struct MinViolation {
    domains: Vec<HyperRectDomain>,
}

impl VectorWeight for MinViolation {
    fn contribution(&self, x: &[f64]) -> Result<f64> {
        let n = self.domains[0].arity();
        let min = self
            .domains
            .iter()
            .zip(x.chunks_exact(n))
            .map(|(d, xs)| d.violations_unchecked(xs))
            .min()
            .expect("at least one domain");
        Ok(f64::from(min))
    }
}

/// One unit of arity `n * m` that fires on the union of the domains.
///
/// Input `d * n + i` carries coordinate `i` for domain `d` (see [`fan_out`]).
/// Input 0 has a full-vector weight contributing `min_d N_d`; the rest are 0.
pub fn build_multidomain_unit(domains: &[HyperRectDomain], t: f64) -> Result<Receptron> {
    let n = shared_arity(domains)?;
    check_selective_thresholds(t, DEFAULT_T_LOW)?;
    let mut weights = vec![WeightFunction::Constant(0.0); n * domains.len()];
    weights[0] = WeightFunction::Vector(Arc::new(MinViolation {
        domains: domains.to_vec(),
    }));
    Receptron::new(weights, ThresholdMode::double(DEFAULT_T_LOW, t)?)
}

/// `x` repeated `m` times.
pub fn fan_out(x: &[f64], m: usize) -> Vec<f64> {
    x.repeat(m)
}

/// OR of `domain.contains` over the domains.
pub fn union_contains(domains: &[HyperRectDomain], x: &[f64]) -> Result<bool> {
    for d in domains {
        if d.contains(x)? {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn union_on_boundary(domains: &[HyperRectDomain], x: &[f64]) -> bool {
    domains.iter().any(|d| d.on_boundary(x))
}

/// Bounding box of the padded bounds of all domains.
pub fn union_bounds(domains: &[HyperRectDomain]) -> Vec<(f64, f64)> {
    let mut bounds = domains[0].padded_bounds();
    for d in &domains[1..] {
        for (b, (lo, hi)) in bounds.iter_mut().zip(d.padded_bounds()) {
            b.0 = b.0.min(lo);
            b.1 = b.1.max(hi);
        }
    }
    bounds
}

/// Three-way check: union oracle vs disjunction network vs multidomain unit.
/// Counterexamples list `[network, unit]` outputs.
pub fn equivalence_suite(
    domains: &[HyperRectDomain],
    sampler: &BoxSampler,
    count: u64,
    exec: Exec,
) -> Result<EquivalenceReport> {
    let m = domains.len();
    let network = build_disjunction_network(domains)?;
    let unit = build_multidomain_unit(domains, crate::domains::DEFAULT_T)?;
    let oracle = |x: &[f64]| union_contains(domains, x);
    let via_network = |x: &[f64]| Ok(network.eval(x)?[0]);
    let via_unit = |x: &[f64]| unit.activate(&fan_out(x, m));
    Ok(sampling::compare(
        sampler,
        count,
        &|x| union_on_boundary(domains, x),
        &oracle,
        &[&via_network, &via_unit],
        exec,
    ))
}
