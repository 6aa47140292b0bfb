//! Linear separability of truth tables, decided exactly.
//!
//! A table is separable iff some `(c, t)` gives `s_k (c . p_k - t) > 0` for
//! every pattern `p_k`, with `s_k = +1` on active and `-1` on inactive
//! patterns. By Gordan's alternative this fails iff there is `y >= 0`,
//! `sum y = 1`, with `sum_k y_k s_k (p_k, -1) = 0`. That dual system has only
//! `n + 2` rows, and a phase-one simplex over exact rationals settles it.

use num_rational::Ratio;

use super::truth::TruthTable;
use crate::error::{Error, Result};
use crate::par::{self, Exec};

type Q = Ratio<i64>;

pub const MAX_SEPARABILITY_ARITY: usize = 6;
pub const MAX_CENSUS_ARITY: usize = 4;

/// Whether a constant-weight single-threshold unit can realize `table`.
pub fn is_linearly_separable(table: &TruthTable) -> Result<bool> {
    let n = table.arity();
    if n > MAX_SEPARABILITY_ARITY {
        return Err(Error::UnsupportedArity {
            n,
            min: 1,
            max: MAX_SEPARABILITY_ARITY,
        });
    }
    // Columns are the patterns; rows are the n input coordinates, the
    // threshold coordinate, and the normalization sum y = 1.
    let patterns = 1usize << n;
    let mut matrix = vec![vec![Q::from_integer(0); patterns]; n + 2];
    for (k, (p, active)) in table.patterns().enumerate() {
        let sign = if active { 1 } else { -1 };
        for (j, row) in matrix.iter_mut().take(n).enumerate() {
            row[k] = Q::from_integer(sign * (p >> j & 1) as i64);
        }
        matrix[n][k] = Q::from_integer(-sign);
        matrix[n + 1][k] = Q::from_integer(1);
    }
    let mut rhs = vec![Q::from_integer(0); n + 2];
    rhs[n + 1] = Q::from_integer(1);
    Ok(!feasible(matrix, rhs))
}

/// Phase-one simplex with Bland's rule: is `{y >= 0 : M y = b}` nonempty?
/// Requires `b >= 0`.
fn feasible(matrix: Vec<Vec<Q>>, rhs: Vec<Q>) -> bool {
    let zero = Q::from_integer(0);
    let one = Q::from_integer(1);
    let rows = matrix.len();
    let cols = matrix[0].len();
    let width = cols + rows;

    // [M | I | b]
    let mut tableau: Vec<Vec<Q>> = matrix
        .into_iter()
        .zip(&rhs)
        .enumerate()
        .map(|(i, (mut row, &b))| {
            row.extend((0..rows).map(|r| if r == i { one } else { zero }));
            row.push(b);
            row
        })
        .collect();
    let mut basis: Vec<usize> = (cols..width).collect();

    // Reduced costs of "minimize sum of artificials", objective value last.
    let mut cost = vec![zero; width + 1];
    for row in &tableau {
        for (j, v) in row.iter().enumerate() {
            if j < cols || j == width {
                cost[j] -= v;
            }
        }
    }

    while let Some(enter) = (0..width).find(|&j| cost[j] < zero) {
        let mut leave: Option<(usize, Q)> = None;
        for (i, row) in tableau.iter().enumerate() {
            if row[enter] > zero {
                let ratio = row[width] / row[enter];
                let better = match leave {
                    None => true,
                    Some((l, best)) => ratio < best || (ratio == best && basis[i] < basis[l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by 0, so some row always qualifies.
        let (pivot_row, _) = leave.expect("phase-one objective is bounded");

        let pivot = tableau[pivot_row][enter];
        tableau[pivot_row].iter_mut().for_each(|v| *v /= pivot);
        let pivot_values = tableau[pivot_row].clone();
        for (i, row) in tableau.iter_mut().enumerate() {
            if i != pivot_row && row[enter] != zero {
                let factor = row[enter];
                row.iter_mut()
                    .zip(&pivot_values)
                    .for_each(|(v, &p)| *v -= factor * p);
            }
        }
        let factor = cost[enter];
        cost.iter_mut()
            .zip(&pivot_values)
            .for_each(|(v, &p)| *v -= factor * p);
        basis[pivot_row] = enter;
    }

    // cost[width] holds -(sum of artificials)
    cost[width] == zero
}

/// Count of linearly separable tables among all `2^(2^n)` tables of arity `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Census {
    pub arity: usize,
    pub separable: u64,
    pub total: u64,
}

impl Census {
    pub fn ratio(&self) -> f64 {
        self.separable as f64 / self.total as f64
    }
}

pub fn census(n: usize) -> Result<Census> {
    census_with(n, Exec::default())
}

pub fn census_with(n: usize, exec: Exec) -> Result<Census> {
    if !(1..=MAX_CENSUS_ARITY).contains(&n) {
        return Err(Error::UnsupportedArity {
            n,
            min: 1,
            max: MAX_CENSUS_ARITY,
        });
    }
    let total = 1u64 << (1 << n);
    let separable = par::count_range(exec, total, |code| {
        let table = TruthTable::from_code(n, code).expect("arity checked");
        is_linearly_separable(&table).expect("arity checked")
    });
    Ok(Census {
        arity: n,
        separable,
        total,
    })
}
