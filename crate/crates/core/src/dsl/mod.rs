//! The `.rcp` text format: named domains, expressions, units and networks,
//! plus one `main` entry.
//!
//! ```text
//! # the cube of side 2 around (5, 3, 10)
//! domain A { center = [5, 3, 10]; width = [2, 2, 2]; }
//! unit U = selective(A);
//! main = U;
//! ```
//!
//! Parsing validates names and arities but never evaluates a unit. The
//! serializer writes a canonical form (kinds in dependency order, names
//! sorted within each kind) that parses back to an equal document.

mod lexer;
mod parser;
mod serialize;

use std::collections::BTreeMap;
use std::fmt;

pub use serialize::format_number;

use crate::boolexpr::{build_expr_receptron, synthesize_digital, BoolExpr, TruthTable};
use crate::domains::{selective_receptron, selective_receptron_with_mode, HyperRectDomain, DEFAULT_T};
use crate::error::{Error, Result};
use crate::network::{build_disjunction_network, build_multidomain_unit, fan_out, union_bounds, union_on_boundary, Network};
use crate::unit::{Receptron, ThresholdMode};

/// A located, fail-fast parse error. Line and column are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub token: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {} (at '{}')",
            self.line, self.column, self.message, self.token
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
pub enum UnitDecl {
    /// Selective unit; explicit `(t_l, t_h)` replaces the default thresholds.
    Selective {
        domain: String,
        thresholds: Option<(f64, f64)>,
    },
    Expr {
        expr: String,
    },
    Truth {
        table: TruthTable,
    },
    Multidomain {
        domains: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum NetworkDecl {
    Or { domains: Vec<String> },
}

/// A parsed `.rcp` document.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpecDocument {
    pub domains: BTreeMap<String, HyperRectDomain>,
    pub exprs: BTreeMap<String, BoolExpr>,
    pub units: BTreeMap<String, UnitDecl>,
    pub networks: BTreeMap<String, NetworkDecl>,
    pub main: String,
}

pub fn parse(text: &str) -> Result<SpecDocument, ParseError> {
    parser::parse(text)
}

pub fn serialize(doc: &SpecDocument) -> String {
    serialize::serialize(doc)
}

impl SpecDocument {
    pub fn main_artifact(&self) -> Result<Artifact> {
        self.artifact(&self.main)
    }

    /// Names of all units and networks, units first, each group sorted.
    pub fn evaluable_names(&self) -> Vec<&str> {
        self.units
            .keys()
            .chain(self.networks.keys())
            .map(String::as_str)
            .collect()
    }

    fn domain(&self, name: &str) -> Result<&HyperRectDomain> {
        self.domains
            .get(name)
            .ok_or_else(|| Error::InvalidExpr(format!("unknown domain {name}")))
    }

    fn domain_list(&self, names: &[String]) -> Result<Vec<HyperRectDomain>> {
        names.iter().map(|n| self.domain(n).cloned()).collect()
    }

    /// Builds the named declaration into something evaluable.
    pub fn artifact(&self, name: &str) -> Result<Artifact> {
        let kind = if let Some(d) = self.domains.get(name) {
            ArtifactKind::Domain(d.clone())
        } else if let Some(e) = self.exprs.get(name) {
            ArtifactKind::Expr(e.clone())
        } else if let Some(u) = self.units.get(name) {
            match u {
                UnitDecl::Selective { domain, thresholds } => {
                    let domain = self.domain(domain)?.clone();
                    let unit = match thresholds {
                        None => selective_receptron(&domain),
                        Some((low, high)) => {
                            selective_receptron_with_mode(&domain, ThresholdMode::double(*low, *high)?)?
                        }
                    };
                    ArtifactKind::Selective { domain, unit }
                }
                UnitDecl::Expr { expr } => {
                    let expr = self
                        .exprs
                        .get(expr)
                        .ok_or_else(|| Error::InvalidExpr(format!("unknown expr {expr}")))?
                        .clone();
                    let unit = build_expr_receptron(&expr, DEFAULT_T)?;
                    ArtifactKind::ExprUnit { expr, unit }
                }
                UnitDecl::Truth { table } => ArtifactKind::Truth {
                    table: table.clone(),
                    unit: synthesize_digital(table),
                },
                UnitDecl::Multidomain { domains } => {
                    let domains = self.domain_list(domains)?;
                    let unit = build_multidomain_unit(&domains, DEFAULT_T)?;
                    ArtifactKind::Multidomain { domains, unit }
                }
            }
        } else if let Some(NetworkDecl::Or { domains }) = self.networks.get(name) {
            let domains = self.domain_list(domains)?;
            let network = build_disjunction_network(&domains)?;
            ArtifactKind::Network { domains, network }
        } else {
            return Err(Error::InvalidExpr(format!("unknown name {name}")));
        };
        Ok(Artifact {
            name: name.to_string(),
            kind,
        })
    }
}

/// A compiled declaration.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub name: String,
    pub kind: ArtifactKind,
}

#[derive(Debug, Clone)]
pub enum ArtifactKind {
    Domain(HyperRectDomain),
    Expr(BoolExpr),
    Selective { domain: HyperRectDomain, unit: Receptron },
    ExprUnit { expr: BoolExpr, unit: Receptron },
    Truth { table: TruthTable, unit: Receptron },
    Multidomain { domains: Vec<HyperRectDomain>, unit: Receptron },
    Network { domains: Vec<HyperRectDomain>, network: Network },
}

impl Artifact {
    /// Number of external analog inputs.
    pub fn arity(&self) -> usize {
        match &self.kind {
            ArtifactKind::Domain(d) | ArtifactKind::Selective { domain: d, .. } => d.arity(),
            ArtifactKind::Expr(e) | ArtifactKind::ExprUnit { expr: e, .. } => e.arity(),
            ArtifactKind::Truth { table, .. } => table.arity(),
            ArtifactKind::Multidomain { domains, .. } => domains[0].arity(),
            ArtifactKind::Network { network, .. } => network.inputs(),
        }
    }

    /// Output bit at `x`. Multidomain units are fed the fanned-out input.
    pub fn eval(&self, x: &[f64]) -> Result<bool> {
        match &self.kind {
            ArtifactKind::Domain(d) => d.contains(x),
            ArtifactKind::Expr(e) => e.eval(x),
            ArtifactKind::Selective { unit, .. }
            | ArtifactKind::ExprUnit { unit, .. }
            | ArtifactKind::Truth { unit, .. } => unit.activate(x),
            ArtifactKind::Multidomain { domains, unit } => {
                if x.len() != domains[0].arity() {
                    return Err(Error::ArityMismatch {
                        expected: domains[0].arity(),
                        found: x.len(),
                    });
                }
                unit.activate(&fan_out(x, domains.len()))
            }
            ArtifactKind::Network { network, .. } => Ok(network.eval(x)?[0]),
        }
    }

    pub fn on_boundary(&self, x: &[f64]) -> bool {
        match &self.kind {
            ArtifactKind::Domain(d) | ArtifactKind::Selective { domain: d, .. } => d.on_boundary(x),
            ArtifactKind::Expr(e) | ArtifactKind::ExprUnit { expr: e, .. } => e.on_boundary(x),
            ArtifactKind::Truth { .. } => false,
            ArtifactKind::Multidomain { domains, .. } | ArtifactKind::Network { domains, .. } => {
                union_on_boundary(domains, x)
            }
        }
    }

    /// Default sampling and rendering box: one width of padding around every
    /// domain or predicate; `[-1, 1]` on unconstrained expression axes and
    /// `[0, 1]` for truth tables.
    pub fn bounds(&self) -> Vec<(f64, f64)> {
        match &self.kind {
            ArtifactKind::Domain(d) | ArtifactKind::Selective { domain: d, .. } => d.padded_bounds(),
            ArtifactKind::Expr(e) | ArtifactKind::ExprUnit { expr: e, .. } => {
                let mut bounds: Vec<Option<(f64, f64)>> = vec![None; e.arity()];
                for (axis, p) in e.predicates() {
                    let (lo, hi) = (p.center() - p.width(), p.center() + p.width());
                    bounds[axis] = Some(match bounds[axis] {
                        None => (lo, hi),
                        Some((a, b)) => (a.min(lo), b.max(hi)),
                    });
                }
                bounds.into_iter().map(|b| b.unwrap_or((-1.0, 1.0))).collect()
            }
            ArtifactKind::Truth { table, .. } => vec![(0.0, 1.0); table.arity()],
            ArtifactKind::Multidomain { domains, .. } | ArtifactKind::Network { domains, .. } => {
                union_bounds(domains)
            }
        }
    }
}
