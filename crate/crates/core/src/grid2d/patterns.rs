use std::fmt;
use std::str::FromStr;

use super::{can_build_2d, Grid2D};
use crate::{Error, Result};

/// Periodic constructions with extremal densities.
///
/// Each generator fixes its phase so that column 0 is the western edge and
/// row `m - 1` the southern edge; supported sizes are those where the
/// finite grid is jammed with the pattern's resistance property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    /// Checkerboard with the east, west and south borders filled.
    /// Predator-resistant; rejects `n = 3` with `m` odd.
    Check,
    /// Staggered empty lots every fourth column, shifted by two on alternate
    /// rows, then completed greedily. Altruist-resistant for all sizes.
    Brick,
    /// Two-house teeth at columns `4j + 1, 4j + 2` above a full bottom row.
    /// Needs `n mod 4` in {0, 3}.
    Rake,
    /// Full rows alternating with rows occupied only at the ends, a full row
    /// second from the bottom. Needs `m` even.
    Stripe,
    /// Rake rows above a full row and a bottom row occupied only at the ends.
    /// Needs `n mod 4` in {0, 3}.
    RakeStripe,
}

impl Pattern {
    pub const ALL: [Pattern; 5] = [
        Pattern::Check,
        Pattern::Brick,
        Pattern::Rake,
        Pattern::Stripe,
        Pattern::RakeStripe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Pattern::Check => "check",
            Pattern::Brick => "brick",
            Pattern::Rake => "rake",
            Pattern::Stripe => "stripe",
            Pattern::RakeStripe => "rake_stripe",
        }
    }

    /// Why `(m, n)` is unsupported, if it is.
    fn unsupported(self, m: usize, n: usize) -> Option<&'static str> {
        if m < 2 || n < 2 {
            return Some("both dimensions must be at least 2");
        }
        match self {
            Pattern::Check if n == 3 && m % 2 == 1 => Some("n = 3 needs an even number of rows"),
            Pattern::Rake | Pattern::RakeStripe if n % 4 == 1 || n % 4 == 2 => {
                Some("n mod 4 must be 0 or 3")
            }
            Pattern::Stripe if m % 2 == 1 => Some("m must be even"),
            _ => None,
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        Pattern::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| Error::Parse(format!("unknown pattern `{s}`")))
    }
}

fn build(m: usize, n: usize, occupied: impl Fn(usize, usize) -> bool) -> Grid2D {
    Grid2D::new(
        (0..m)
            .map(|r| (0..n).map(|c| occupied(r, c)).collect())
            .collect(),
    )
    .expect("dimensions are positive")
}

/// Fills buildable lots in row-major sweeps until none remain.
fn complete(mut g: Grid2D) -> Grid2D {
    loop {
        let mut changed = false;
        for r in 0..g.m() {
            for c in 0..g.n() {
                if can_build_2d(&g, r, c) {
                    g.set(r, c, true);
                    changed = true;
                }
            }
        }
        if !changed {
            return g;
        }
    }
}

fn rake_row(c: usize) -> bool {
    matches!(c % 4, 1 | 2)
}

pub fn generate_pattern(pattern: Pattern, m: usize, n: usize) -> Result<Grid2D> {
    if let Some(reason) = pattern.unsupported(m, n) {
        return Err(Error::UnsupportedSize {
            pattern: pattern.name(),
            m,
            n,
            reason,
        });
    }
    let edge = |c: usize| c == 0 || c == n - 1;
    Ok(match pattern {
        Pattern::Check => build(m, n, |r, c| edge(c) || r == m - 1 || (r + c) % 2 == 0),
        Pattern::Brick => complete(build(m, n, |r, c| {
            let gap = if r % 2 == 0 { 3 } else { 1 };
            c % 4 != gap
        })),
        Pattern::Rake => build(m, n, |r, c| r == m - 1 || rake_row(c)),
        Pattern::Stripe => build(m, n, |r, c| (m - 1 - r) % 2 == 1 || edge(c)),
        Pattern::RakeStripe => build(m, n, |r, c| {
            if r == m - 1 {
                edge(c)
            } else if r == m - 2 {
                true
            } else {
                rake_row(c)
            }
        }),
    })
}

/// Smallest occupancy of a jammed `m x n` grid.
pub fn min_occupancy_bound(m: usize, n: usize) -> usize {
    match n % 4 {
        0 => m * n / 2 + 2,
        2 => m * (n + 2) / 2,
        _ => m * (n + 1) / 2 + 1,
    }
}
