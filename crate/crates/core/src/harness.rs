//! Equivalence suites for compiled `.rcp` declarations.

use crate::boolexpr::build_expr_receptron;
use crate::domains::{selective_receptron, verify_unit, DEFAULT_T};
use crate::dsl::{Artifact, ArtifactKind, SpecDocument};
use crate::error::Result;
use crate::network::equivalence_suite;
use crate::par::{self, Exec};
use crate::sampling::{self, BoxSampler, Counterexample, EquivalenceReport, MAX_COUNTEREXAMPLES};
use crate::unit::pattern_inputs;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: String,
    /// What was compared with what.
    pub description: &'static str,
    pub report: EquivalenceReport,
}

/// Runs the suite that applies to `artifact` on `samples` seeded points
/// (truth-table units are checked exhaustively instead).
pub fn verify_artifact(artifact: &Artifact, samples: u64, seed: u64, exec: Exec) -> Result<SuiteResult> {
    let sampler = BoxSampler::new(artifact.bounds(), seed);
    let (description, report) = match &artifact.kind {
        ArtifactKind::Domain(d) => (
            "selective unit vs rect-product oracle",
            verify_unit(d, &selective_receptron(d), &sampler, samples, exec),
        ),
        ArtifactKind::Selective { domain, unit } => (
            "selective unit vs rect-product oracle",
            verify_unit(domain, unit, &sampler, samples, exec),
        ),
        ArtifactKind::Expr(e) => {
            let unit = build_expr_receptron(e, DEFAULT_T)?;
            ("expr unit vs expression oracle", expr_report(e, &unit, &sampler, samples, exec))
        }
        ArtifactKind::ExprUnit { expr, unit } => (
            "expr unit vs expression oracle",
            expr_report(expr, unit, &sampler, samples, exec),
        ),
        ArtifactKind::Truth { table, unit } => {
            let n = table.arity();
            let wrong = par::map_range(exec, 1 << n, |p| {
                let x = pattern_inputs(p as u64, n);
                let got = unit.activate(&x).ok();
                (got != Some(table.get(p as u64))).then(|| Counterexample {
                    index: p as u64,
                    point: x,
                    expected: table.get(p as u64),
                    actual: got.into_iter().collect(),
                })
            });
            let counterexamples: Vec<_> = wrong.into_iter().flatten().collect();
            (
                "synthesized unit vs truth table (all patterns)",
                EquivalenceReport {
                    tested: 1 << n,
                    mismatches: counterexamples.len() as u64,
                    errors: 0,
                    counterexamples: counterexamples.into_iter().take(MAX_COUNTEREXAMPLES).collect(),
                },
            )
        }
        ArtifactKind::Multidomain { domains, .. } | ArtifactKind::Network { domains, .. } => (
            "union oracle vs disjunction network vs multidomain unit",
            equivalence_suite(domains, &sampler, samples, exec)?,
        ),
    };
    Ok(SuiteResult {
        name: artifact.name.clone(),
        description,
        report,
    })
}

fn expr_report(
    e: &crate::boolexpr::BoolExpr,
    unit: &crate::unit::Receptron,
    sampler: &BoxSampler,
    samples: u64,
    exec: Exec,
) -> EquivalenceReport {
    let oracle = |x: &[f64]| e.eval(x);
    let candidate = |x: &[f64]| unit.activate(x);
    sampling::compare(sampler, samples, &|x| e.on_boundary(x), &oracle, &[&candidate], exec)
}

/// Suites for every unit and network, then for `main` if it is a bare
/// domain or expression.
pub fn verify_document(doc: &SpecDocument, samples: u64, seed: u64, exec: Exec) -> Result<Vec<SuiteResult>> {
    let mut names: Vec<&str> = doc.evaluable_names();
    if !names.contains(&doc.main.as_str()) {
        names.push(&doc.main);
    }
    names
        .into_iter()
        .map(|name| verify_artifact(&doc.artifact(name)?, samples, seed, exec))
        .collect()
}
