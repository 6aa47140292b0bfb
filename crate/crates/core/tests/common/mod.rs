#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use receptron::{BoolExpr, HyperRectDomain};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Box with centers in [-10, 10] and widths in [0.1, 6].
pub fn random_domain(rng: &mut ChaCha8Rng, n: usize) -> HyperRectDomain {
    let centers: Vec<f64> = (0..n).map(|_| rng.random_range(-10.0..10.0)).collect();
    let widths: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..6.0)).collect();
    HyperRectDomain::new(&centers, &widths).unwrap()
}

/// Random tree over `arity` axes with every axis used at least once when
/// `depth` allows; And/Or nodes always have two or three children.
pub fn random_expr(rng: &mut ChaCha8Rng, arity: usize, depth: usize) -> BoolExpr {
    if depth == 0 || rng.random_bool(0.25) {
        let axis = rng.random_range(0..arity);
        return BoolExpr::pred(axis, rng.random_range(-2.0..2.0), rng.random_range(0.5..3.0)).unwrap();
    }
    match rng.random_range(0..3) {
        0 => BoolExpr::not(random_expr(rng, arity, depth - 1)),
        k => {
            let children = (0..rng.random_range(2..=3))
                .map(|_| random_expr(rng, arity, depth - 1))
                .collect();
            if k == 1 {
                BoolExpr::And(children)
            } else {
                BoolExpr::Or(children)
            }
        }
    }
}
