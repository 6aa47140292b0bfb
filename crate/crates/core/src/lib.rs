//! Receptrons: threshold units whose weights are functions of the input.
//!
//! A single receptron with selective weights `w_i(x_i) = (1 - f_i(x_i)) / x_i`
//! fires exactly inside an axis-aligned box ([`domains`]). The crate also
//! covers arbitrary Boolean structure over rect predicates and digital truth
//! tables ([`boolexpr`]), unions of boxes ([`network`]) and a small text
//! format for all of these ([`dsl`]).
//!
//! Batch checks run on rayon when the `parallel` feature is enabled (the
//! default); see [`par`].

pub mod boolexpr;
pub mod domains;
pub mod dsl;
pub mod error;
pub mod harness;
pub mod network;
pub mod par;
pub mod sampling;
pub mod unit;

pub use boolexpr::{
    build_expr_receptron, census, demorgan_product, eval_expr, is_linearly_separable, normalized_or,
    synthesize_digital, BoolExpr, Census, TruthTable,
};
pub use domains::{
    build_selective_receptron, domain_contains, rect_eval, selective_receptron, selective_weight,
    verify_equivalence, violation_count, HyperRectDomain, RectPredicate,
};
pub use error::{Error, Result};
pub use network::{build_disjunction_network, build_multidomain_unit, eval_network, fan_out, Network, Source};
pub use par::Exec;
pub use sampling::{BoxSampler, Counterexample, EquivalenceReport};
pub use unit::{heaviside, negated_heaviside, InputVector, Receptron, ThresholdMode, WeightFunction};
