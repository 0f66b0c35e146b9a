//! Exhaustive enumeration of one-dimensional configurations.
//!
//! This is the ground-truth oracle for every counting method in
//! [`crate::gfcount`]. The `2^n` strings of a given length are split into
//! blocks by their leading lots; blocks are processed independently and
//! merged in order, so the output is lexicographic regardless of [`Exec`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::core1d::{lots_in_family, Configuration1D};
use crate::{Caps, Error, Exec, Family, Result};

/// Counts `J(n, k)` of family members with length `n` and occupancy `k`.
///
/// Only nonzero counts are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    family: Family,
    max_length: usize,
    entries: BTreeMap<(usize, usize), BigUint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Sum over occupancies for each fixed length.
    Length,
    /// Sum over lengths for each fixed occupancy.
    Occupancy,
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "length" => Ok(Axis::Length),
            "occupancy" => Ok(Axis::Occupancy),
            other => Err(Error::Parse(format!("unknown axis `{other}`"))),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Length => "length",
            Axis::Occupancy => "occupancy",
        })
    }
}

impl CountTable {
    pub fn new(family: Family, max_length: usize) -> Self {
        CountTable {
            family,
            max_length,
            entries: BTreeMap::new(),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    /// Sets `J(n, k)`; storing zero removes the entry.
    ///
    /// Panics if `n` exceeds the table's maximal length.
    pub fn set(&mut self, n: usize, k: usize, count: BigUint) {
        assert!(n <= self.max_length, "length {n} outside table");
        if count.is_zero() {
            self.entries.remove(&(n, k));
        } else {
            self.entries.insert((n, k), count);
        }
    }

    pub fn add_one(&mut self, n: usize, k: usize) {
        assert!(n <= self.max_length, "length {n} outside table");
        *self.entries.entry((n, k)).or_default() += 1u32;
    }

    pub fn get(&self, n: usize, k: usize) -> BigUint {
        self.entries.get(&(n, k)).cloned().unwrap_or_default()
    }

    /// Nonzero entries in `(n, k)` order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigUint)> {
        self.entries.iter().map(|(&(n, k), c)| (n, k, c))
    }

    pub fn row(&self, n: usize) -> impl Iterator<Item = (usize, &BigUint)> {
        self.entries
            .range((n, 0)..=(n, usize::MAX))
            .map(|(&(_, k), c)| (k, c))
    }

    /// Same counts, ignoring the family tag.
    pub fn same_counts(&self, other: &CountTable) -> bool {
        self.max_length == other.max_length && self.entries == other.entries
    }

    /// First `(n, k)` where the two tables disagree, up to the shorter table's length.
    pub fn first_difference(&self, other: &CountTable) -> Option<(usize, usize)> {
        let limit = self.max_length.min(other.max_length);
        let keys = self
            .entries
            .keys()
            .chain(other.entries.keys())
            .filter(|(n, _)| *n <= limit);
        keys.filter(|&&(n, k)| self.get(n, k) != other.get(n, k))
            .min()
            .copied()
    }

    /// Totals along `axis` for indices `0..=upto`.
    pub fn totals(&self, axis: Axis, upto: usize) -> Result<Vec<BigUint>> {
        match axis {
            Axis::Length => {
                if upto > self.max_length {
                    return Err(Error::InsufficientTable {
                        needed: upto,
                        have: self.max_length,
                    });
                }
                Ok((0..=upto)
                    .map(|n| self.row(n).map(|(_, c)| c).sum())
                    .collect())
            }
            Axis::Occupancy => {
                let needed = self.family.max_length_for_occupancy(upto);
                if needed > self.max_length {
                    return Err(Error::InsufficientTable {
                        needed,
                        have: self.max_length,
                    });
                }
                let mut sums = vec![BigUint::zero(); upto + 1];
                for (_, k, c) in self.iter() {
                    if k <= upto {
                        sums[k] += c;
                    }
                }
                Ok(sums)
            }
        }
    }

    /// Largest occupancy whose total is fully covered by this table.
    pub fn max_covered_occupancy(&self) -> Option<usize> {
        (0..=self.max_length)
            .take_while(|&k| self.family.max_length_for_occupancy(k) <= self.max_length)
            .last()
    }
}

/// Number of leading lots used to split the search space.
const PREFIX_BITS: usize = 10;

/// Calls `visit` on every length-`n` family member in `[lo, hi)` mask order.
fn scan_block(n: usize, family: Family, lo: u32, hi: u32, mut visit: impl FnMut(u32, &[bool])) {
    let mut buf = [false; 32];
    for mask in lo..hi {
        for (i, slot) in buf[..n].iter_mut().enumerate() {
            *slot = mask >> (n - 1 - i) & 1 == 1;
        }
        if lots_in_family(&buf[..n], family) {
            visit(mask, &buf[..n]);
        }
    }
}

fn blocks(n: usize) -> Vec<(u32, u32)> {
    let total: u64 = 1u64 << n;
    let parts: u64 = 1u64 << n.min(PREFIX_BITS);
    let width = total / parts;
    (0..parts)
        .map(|p| ((p * width) as u32, ((p + 1) * width) as u32))
        .collect()
}

/// All family members of length `n` in lexicographic order.
pub fn enumerate_1d(n: usize, family: Family, caps: &Caps) -> Result<Vec<Configuration1D>> {
    enumerate_1d_with(n, family, caps, Exec::default())
}

pub fn enumerate_1d_with(
    n: usize,
    family: Family,
    caps: &Caps,
    exec: Exec,
) -> Result<Vec<Configuration1D>> {
    caps.check_len(n)?;
    let parts = exec.map(blocks(n), |(lo, hi)| {
        let mut found = Vec::new();
        scan_block(n, family, lo, hi, |_, lots| {
            found.push(Configuration1D::new(lots.to_vec()))
        });
        found
    });
    Ok(parts.into_iter().flatten().collect())
}

/// Brute-force `J(n, k)` for every `n <= n_max`.
pub fn count_table_brute(n_max: usize, family: Family, caps: &Caps) -> Result<CountTable> {
    count_table_brute_with(n_max, family, caps, Exec::default())
}

pub fn count_table_brute_with(
    n_max: usize,
    family: Family,
    caps: &Caps,
    exec: Exec,
) -> Result<CountTable> {
    caps.check_len(n_max)?;
    let jobs: Vec<(usize, u32, u32)> = (0..=n_max)
        .flat_map(|n| blocks(n).into_iter().map(move |(lo, hi)| (n, lo, hi)))
        .collect();
    let partials = exec.map(jobs, |(n, lo, hi)| {
        let mut by_k = vec![0u64; n + 1];
        scan_block(n, family, lo, hi, |mask, _| {
            by_k[mask.count_ones() as usize] += 1
        });
        (n, by_k)
    });
    let mut table = CountTable::new(family, n_max);
    let mut acc: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for (n, by_k) in partials {
        for (k, c) in by_k.into_iter().enumerate().filter(|(_, c)| *c > 0) {
            *acc.entry((n, k)).or_default() += c;
        }
    }
    for ((n, k), c) in acc {
        table.set(n, k, BigUint::from(c));
    }
    Ok(table)
}

/// Convenience: `totals` of a freshly brute-forced table.
pub fn totals(table: &CountTable, axis: Axis, upto: usize) -> Result<Vec<BigUint>> {
    table.totals(axis, upto)
}
