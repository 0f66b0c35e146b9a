//! Semantic predicates for one-dimensional configurations.
//!
//! A lot receives sunlight from the east or the west. A house is blocked when
//! both of its neighbours are occupied; the two boundary lots always see the
//! sun from outside. Indices in this API are 0-based.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Family, Result};

/// A row of lots, `true` meaning a house is built there.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Configuration1D {
    lots: Vec<bool>,
}

impl Configuration1D {
    pub fn new(lots: Vec<bool>) -> Self {
        Configuration1D { lots }
    }

    /// Decodes the low `n` bits of `mask`, lot 0 being the most significant bit.
    pub fn from_mask(mask: u32, n: usize) -> Self {
        Configuration1D {
            lots: (0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect(),
        }
    }

    pub fn lots(&self) -> &[bool] {
        &self.lots
    }

    pub fn len(&self) -> usize {
        self.lots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lots.is_empty()
    }

    pub fn occupancy(&self) -> usize {
        self.lots.iter().filter(|&&b| b).count()
    }

    pub fn reversed(&self) -> Self {
        Configuration1D {
            lots: self.lots.iter().rev().copied().collect(),
        }
    }

    /// Flips every lot (houses become vacancies and vice versa).
    pub fn complement(&self) -> Self {
        Configuration1D {
            lots: self.lots.iter().map(|&b| !b).collect(),
        }
    }
}

impl fmt::Display for Configuration1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.lots {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Configuration1D {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!(
                    "unexpected character `{other}` in configuration"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Configuration1D::new)
    }
}

/// Empty lots classified by what an invader could do there.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SiteReport {
    pub empty_sites: BTreeSet<usize>,
    /// Empty lots where a new house would itself receive sunlight.
    pub predator_sites: BTreeSet<usize>,
    /// Empty lots where building leaves every existing house lit.
    pub altruist_sites: BTreeSet<usize>,
}

/// Flags computed by [`classify_1d`] and [`crate::grid2d::classify_2d`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Classification {
    pub permissible: bool,
    pub jammed: bool,
    pub p_resistant: bool,
    pub a_resistant: bool,
    pub es: bool,
}

impl Classification {
    /// Whether a configuration with these flags belongs to `family`.
    ///
    /// Flory membership is not expressible through these flags and always
    /// returns `false`; see [`is_flory_jammed`].
    pub fn in_family(&self, family: Family) -> bool {
        match family {
            Family::Riviera => self.jammed,
            Family::Predator => self.p_resistant,
            Family::Altruist => self.a_resistant,
            Family::Es => self.es,
            Family::Flory => false,
        }
    }
}

#[inline]
fn house_lit(lots: &[bool], i: usize) -> bool {
    let n = lots.len();
    i == 0 || i + 1 == n || !lots[i - 1] || !lots[i + 1]
}

/// Would the house at `i` be lit if lot `filled` were occupied as well?
#[inline]
fn house_lit_with(lots: &[bool], i: usize, filled: usize) -> bool {
    let n = lots.len();
    let occ = |j: usize| j == filled || lots[j];
    i == 0 || i + 1 == n || !occ(i - 1) || !occ(i + 1)
}

/// Neighbouring houses of lot `i` that existed before building there.
fn existing_neighbours(lots: &[bool], i: usize) -> impl Iterator<Item = usize> + '_ {
    let left = i.checked_sub(1);
    let right = (i + 1 < lots.len()).then_some(i + 1);
    left.into_iter().chain(right).filter(move |&j| lots[j])
}

fn is_predator_site(lots: &[bool], i: usize) -> bool {
    house_lit_with(lots, i, i)
}

fn is_altruist_site(lots: &[bool], i: usize) -> bool {
    existing_neighbours(lots, i).all(|j| house_lit_with(lots, j, i))
}

/// Building on empty lot `i` keeps the configuration permissible.
fn can_build(lots: &[bool], i: usize) -> bool {
    is_predator_site(lots, i) && is_altruist_site(lots, i)
}

pub fn lots_permissible(lots: &[bool]) -> bool {
    (0..lots.len()).all(|i| !lots[i] || house_lit(lots, i))
}

pub fn lots_jammed(lots: &[bool]) -> bool {
    lots_permissible(lots) && (0..lots.len()).all(|i| lots[i] || !can_build(lots, i))
}

/// Classification of a raw slice of lots; the enumerators call this directly.
pub fn classify_lots(lots: &[bool]) -> Classification {
    let permissible = lots_permissible(lots);
    let jammed = permissible && (0..lots.len()).all(|i| lots[i] || !can_build(lots, i));
    if !jammed {
        return Classification {
            permissible,
            ..Default::default()
        };
    }
    let empties = || (0..lots.len()).filter(|&i| !lots[i]);
    let p_resistant = empties().all(|i| !is_predator_site(lots, i));
    let a_resistant = empties().all(|i| !is_altruist_site(lots, i));
    Classification {
        permissible,
        jammed,
        p_resistant,
        a_resistant,
        es: p_resistant && a_resistant,
    }
}

/// Jammed state of Flory's model: no two adjacent occupied sites, and no
/// vacant site can be occupied without creating such a pair.
pub fn is_flory_jammed(lots: &[bool]) -> bool {
    let n = lots.len();
    let no_pairs = lots.windows(2).all(|w| !(w[0] && w[1]));
    no_pairs && (0..n).all(|i| lots[i] || (i > 0 && lots[i - 1]) || (i + 1 < n && lots[i + 1]))
}

/// Membership of raw lots in `family`.
pub fn lots_in_family(lots: &[bool], family: Family) -> bool {
    match family {
        Family::Flory => is_flory_jammed(lots),
        _ => classify_lots(lots).in_family(family),
    }
}

pub fn is_permissible_1d(c: &Configuration1D) -> bool {
    lots_permissible(&c.lots)
}

pub fn is_jammed_1d(c: &Configuration1D) -> bool {
    lots_jammed(&c.lots)
}

/// Predator and altruist sites of a jammed configuration.
pub fn site_report_1d(c: &Configuration1D) -> Result<SiteReport> {
    let lots = &c.lots;
    if !lots_jammed(lots) {
        return Err(Error::NotJammed);
    }
    let empty_sites: BTreeSet<usize> = (0..lots.len()).filter(|&i| !lots[i]).collect();
    Ok(SiteReport {
        predator_sites: empty_sites
            .iter()
            .copied()
            .filter(|&i| is_predator_site(lots, i))
            .collect(),
        altruist_sites: empty_sites
            .iter()
            .copied()
            .filter(|&i| is_altruist_site(lots, i))
            .collect(),
        empty_sites,
    })
}

pub fn classify_1d(c: &Configuration1D) -> Classification {
    classify_lots(&c.lots)
}
