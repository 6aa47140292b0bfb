use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::unit::{pattern_inputs, LookupTable, Receptron, ThresholdMode, WeightFunction};

/// Largest arity a [`TruthTable`] may have.
pub const MAX_TABLE_ARITY: usize = 20;

/// Output bits of a Boolean function, indexed by input pattern (input 1 is
/// the least significant bit of the pattern index).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    arity: usize,
    bits: Vec<bool>,
}

impl TruthTable {
    pub fn new(arity: usize, bits: Vec<bool>) -> Result<Self> {
        if !(1..=MAX_TABLE_ARITY).contains(&arity) {
            return Err(Error::UnsupportedArity {
                n: arity,
                min: 1,
                max: MAX_TABLE_ARITY,
            });
        }
        if bits.len() != 1 << arity {
            return Err(Error::InvalidTable(format!(
                "arity {arity} needs {} entries, got {}",
                1usize << arity,
                bits.len()
            )));
        }
        Ok(Self { arity, bits })
    }

    /// Table whose pattern-`p` output is bit `p` of `code` (arity <= 6).
    pub fn from_code(arity: usize, code: u64) -> Result<Self> {
        if !(1..=6).contains(&arity) {
            return Err(Error::UnsupportedArity {
                n: arity,
                min: 1,
                max: 6,
            });
        }
        let bits = (0..1u32 << arity).map(|p| code >> p & 1 == 1).collect();
        Self::new(arity, bits)
    }

    pub fn from_fn(arity: usize, f: impl Fn(u64) -> bool) -> Result<Self> {
        let len = 1u64.checked_shl(arity as u32).unwrap_or(0);
        Self::new(arity, (0..len).map(f).collect())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, pattern: u64) -> bool {
        self.bits[pattern as usize]
    }

    pub fn patterns(&self) -> impl Iterator<Item = (u64, bool)> + '_ {
        self.bits.iter().enumerate().map(|(p, &b)| (p as u64, b))
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    /// Bit string in ascending pattern order, e.g. XOR is `"0110"`.
    fn from_str(s: &str) -> Result<Self> {
        let len = s.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidTable(format!(
                "length {len} is not a power of two >= 2"
            )));
        }
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidTable(format!("unexpected character {c:?}"))),
            })
            .collect::<Result<_>>()?;
        Self::new(len.trailing_zeros() as usize, bits)
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Synthesizes a lookup-weight receptron realizing `table` on every digital
/// input pattern.
///
/// The all-zero pattern always sums to 0, so the threshold interval is picked
/// around it: `(-1/2, 1/2]` when `T(0) = 1` (active patterns target `S = 0`,
/// inactive `S = 1`), `(1/2, 3/2]` otherwise (active `S = 1`, inactive `S = 0`).
/// Each nonzero pattern puts its target on the lookup of its lowest active
/// input; every other lookup entry is 0.
pub fn synthesize_digital(table: &TruthTable) -> Receptron {
    let n = table.arity();
    let zero_active = table.get(0);
    let (low, high) = if zero_active { (-0.5, 0.5) } else { (0.5, 1.5) };

    let mut lookups = vec![LookupTable::new(); n];
    for (pattern, active) in table.patterns() {
        let target = if active != zero_active { 1.0 } else { 0.0 };
        let lowest = if pattern == 0 { None } else { Some(pattern.trailing_zeros() as usize) };
        for (j, lookup) in lookups.iter_mut().enumerate() {
            let w = if Some(j) == lowest { target } else { 0.0 };
            lookup.insert(pattern, w);
        }
    }
    let weights = lookups
        .into_iter()
        .map(|t| WeightFunction::Lookup(Arc::new(t)))
        .collect();
    Receptron::new(weights, ThresholdMode::Double { low, high }).expect("arity >= 1")
}

/// Number of patterns where `unit` disagrees with `table` (errors count as
/// disagreement).
pub(crate) fn disagreements(unit: &Receptron, table: &TruthTable) -> usize {
    table
        .patterns()
        .filter(|&(p, bit)| unit.activate(&pattern_inputs(p, table.arity())).ok() != Some(bit))
        .count()
}

/// Synthesizes every table of arity `n` (1..=4) and returns how many failed
/// to reproduce their table on all patterns.
pub fn completeness_failures(n: usize, exec: Exec) -> Result<u64> {
    if !(1..=4).contains(&n) {
        return Err(Error::UnsupportedArity { n, min: 1, max: 4 });
    }
    let total = 1u64 << (1 << n);
    Ok(par::count_range(exec, total, |code| {
        let table = TruthTable::from_code(n, code).expect("arity checked");
        disagreements(&synthesize_digital(&table), &table) != 0
    }))
}
