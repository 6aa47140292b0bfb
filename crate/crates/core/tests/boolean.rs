mod common;

use std::collections::HashSet;

use rand::Rng;
use receptron::boolexpr::{completeness_failures, normalized_or_terms};
use receptron::unit::pattern_inputs;
use receptron::{
    build_expr_receptron, census, demorgan_product, is_linearly_separable, normalized_or, synthesize_digital,
    BoxSampler, Exec, Receptron, TruthTable,
};

fn bits_of(mask: u32, len: u32) -> Vec<u8> {
    (0..len).map(|i| (mask >> i & 1) as u8).collect()
}

#[test]
fn normalized_or_is_logical_or_up_to_twelve_inputs() {
    for len in 1..=12 {
        for mask in 0u32..1 << len {
            let bits = bits_of(mask, len);
            assert_eq!(normalized_or(&bits).unwrap(), u8::from(mask != 0));
            assert_eq!(demorgan_product(&bits).unwrap(), u8::from(mask == (1 << len) - 1));
        }
    }
}

#[test]
fn two_input_table() {
    // f_i, f_j, OR, numerator, denominator
    let rows = [(0, 0, 0, 0, 1), (0, 1, 1, 1, 1), (1, 0, 1, 1, 1), (1, 1, 1, 2, 2)];
    for (fi, fj, or, num, den) in rows {
        assert_eq!(normalized_or(&[fi, fj]).unwrap(), or);
        assert_eq!(normalized_or_terms(&[fi, fj]).unwrap(), (num, den));
    }
}

/// Set of tables realized by integer weights in [-w, w] and half-integer
/// thresholds. Independent of the LP route.
fn integer_grid_tables(n: usize, w: i64) -> HashSet<u64> {
    let mut found = HashSet::new();
    let side = (2 * w + 1) as usize;
    let combos = side.pow(n as u32);
    for c in 0..combos {
        let mut rest = c;
        let weights: Vec<i64> = (0..n)
            .map(|_| {
                let v = (rest % side) as i64 - w;
                rest /= side;
                v
            })
            .collect();
        let bound: i64 = weights.iter().map(|v| v.abs()).sum();
        for t2 in (-2 * bound - 1..=2 * bound + 1).step_by(2) {
            // threshold t2 / 2
            let mut code = 0u64;
            for p in 0..1u64 << n {
                let s: i64 = (0..n).filter(|&j| p >> j & 1 == 1).map(|j| weights[j]).sum();
                if 2 * s > t2 {
                    code |= 1 << p;
                }
            }
            found.insert(code);
        }
    }
    found
}

#[test]
fn separability_agrees_with_integer_grid_oracle() {
    for n in 1..=3 {
        let oracle = integer_grid_tables(n, 3);
        for code in 0..1u64 << (1 << n) {
            let table = TruthTable::from_code(n, code).unwrap();
            assert_eq!(
                is_linearly_separable(&table).unwrap(),
                oracle.contains(&code),
                "n = {n}, table {table}"
            );
        }
    }
}

#[test]
fn grid_oracle_counts() {
    assert_eq!(integer_grid_tables(1, 3).len(), 4);
    assert_eq!(integer_grid_tables(2, 3).len(), 14);
    assert_eq!(integer_grid_tables(3, 3).len(), 104);
    assert_eq!(integer_grid_tables(4, 5).len(), 1882);
}

#[test]
fn census_sequence() {
    let counts: Vec<u64> = (1..=4).map(|n| census(n).unwrap().separable).collect();
    assert_eq!(counts, vec![4, 14, 104, 1882]);
    let c4 = census(4).unwrap();
    assert_eq!(c4.total, 65_536);
    assert!(c4.ratio() < 0.03);
}

/// Tables realized by constant-weight receptrons are exactly the separable ones.
#[test]
fn constant_weight_units_are_separable() {
    for n in 1..=3usize {
        let mut realized = HashSet::new();
        for c in 0..7usize.pow(n as u32) {
            let mut rest = c;
            let coefficients: Vec<f64> = (0..n)
                .map(|_| {
                    let v = (rest % 7) as f64 - 3.0;
                    rest /= 7;
                    v
                })
                .collect();
            for t in -10..=10 {
                let unit = Receptron::perceptron(&coefficients, f64::from(t) + 0.5).unwrap();
                let table =
                    TruthTable::from_fn(n, |p| unit.activate(&pattern_inputs(p, n)).unwrap()).unwrap();
                assert!(is_linearly_separable(&table).unwrap(), "{table}");
                realized.insert(table);
            }
        }
        let separable = (0..1u64 << (1 << n))
            .filter(|&code| is_linearly_separable(&TruthTable::from_code(n, code).unwrap()).unwrap())
            .count();
        assert_eq!(realized.len(), separable);
    }
}

#[test]
fn synthesis_is_complete_for_four_inputs() {
    assert_eq!(completeness_failures(4, Exec::default()).unwrap(), 0);
}

#[test]
fn synthesis_random_tables_up_to_six_inputs() {
    let mut rng = common::rng(99);
    for n in 1..=6 {
        for _ in 0..50 {
            let bits = (0..1 << n).map(|_| rng.random_bool(0.5)).collect();
            let table = TruthTable::new(n, bits).unwrap();
            let unit = synthesize_digital(&table);
            for (p, bit) in table.patterns() {
                assert_eq!(unit.activate(&pattern_inputs(p, n)).unwrap(), bit);
            }
        }
    }
}

#[test]
fn expression_units_match_evaluation() {
    let mut rng = common::rng(5);
    for case in 0..60u64 {
        let arity = rng.random_range(1..=6);
        let e = common::random_expr(&mut rng, arity, 4);
        let unit = build_expr_receptron(&e, 0.5).unwrap();
        let sampler = BoxSampler::cube(e.arity(), -4.0, 4.0, case);
        for i in 0..10_000 {
            let x = sampler.point(i, |x| e.on_boundary(x));
            assert_eq!(unit.activate(&x).unwrap(), e.eval(&x).unwrap(), "case {case} at {x:?}");
        }
    }
}
