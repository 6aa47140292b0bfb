use std::fmt::Write;

use super::{NetworkDecl, SpecDocument, UnitDecl};
use crate::boolexpr::BoolExpr;

/// Shortest decimal that parses back to the same `f64`.
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn vector(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|&v| format_number(v)).collect();
    format!("[{}]", parts.join(", "))
}

fn expr(e: &BoolExpr, out: &mut String) {
    match e {
        BoolExpr::Pred { axis, pred } => {
            let _ = write!(
                out,
                "rect(x[{axis}], center = {}, width = {})",
                format_number(pred.center()),
                format_number(pred.width())
            );
        }
        BoolExpr::Or(children) => join(children, " | ", |c| matches!(c, BoolExpr::Or(_)), out),
        BoolExpr::And(children) => join(
            children,
            " & ",
            |c| matches!(c, BoolExpr::Or(_) | BoolExpr::And(_)),
            out,
        ),
        BoolExpr::Not(child) => {
            out.push('!');
            let wrap = matches!(**child, BoolExpr::Or(_) | BoolExpr::And(_));
            group(child, wrap, out);
        }
    }
}

fn join(children: &[BoolExpr], sep: &str, wrap: impl Fn(&BoolExpr) -> bool, out: &mut String) {
    for (i, c) in children.iter().enumerate() {
        if i > 0 {
            out.push_str(sep);
        }
        group(c, wrap(c), out);
    }
}

fn group(e: &BoolExpr, wrap: bool, out: &mut String) {
    if wrap {
        out.push('(');
    }
    expr(e, out);
    if wrap {
        out.push(')');
    }
}

pub(crate) fn serialize(doc: &SpecDocument) -> String {
    let mut out = String::new();
    for (name, d) in &doc.domains {
        let _ = writeln!(
            out,
            "domain {name} {{\n    center = {};\n    width = {};\n}}",
            vector(&d.centers()),
            vector(&d.widths())
        );
    }
    if !doc.domains.is_empty() {
        out.push('\n');
    }

    for (name, e) in &doc.exprs {
        let _ = write!(out, "expr {name} = ");
        expr(e, &mut out);
        out.push_str(";\n");
    }
    if !doc.exprs.is_empty() {
        out.push('\n');
    }

    for (name, u) in &doc.units {
        let body = match u {
            UnitDecl::Selective {
                domain,
                thresholds: None,
            } => format!("selective({domain})"),
            UnitDecl::Selective {
                domain,
                thresholds: Some((low, high)),
            } => format!(
                "selective({domain}, tl = {}, th = {})",
                format_number(*low),
                format_number(*high)
            ),
            UnitDecl::Expr { expr } => format!("expr({expr})"),
            UnitDecl::Truth { table } => format!("truth({table})"),
            UnitDecl::Multidomain { domains } => format!("multidomain({})", domains.join(", ")),
        };
        let _ = writeln!(out, "unit {name} = {body};");
    }
    if !doc.units.is_empty() {
        out.push('\n');
    }

    for (name, n) in &doc.networks {
        let NetworkDecl::Or { domains } = n;
        let _ = writeln!(out, "network {name} = or({});", domains.join(", "));
    }
    if !doc.networks.is_empty() {
        out.push('\n');
    }

    let _ = writeln!(out, "main = {};", doc.main);
    out
}
