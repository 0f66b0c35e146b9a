use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{enumerate_2d, Grid2D};
use crate::gfcount::{family_gf, totals_from_gf};
use crate::{Axis, Caps, Error, Family, Result};

fn es_precondition(m: usize, n: usize) -> Result<()> {
    let reason = if m <= 2 || n <= 2 {
        "both dimensions must exceed 2"
    } else if !n.is_multiple_of(3) {
        "n is not divisible by 3"
    } else if m.is_multiple_of(2) {
        "m is even"
    } else {
        return Ok(());
    };
    Err(Error::NoESExists { m, n, reason })
}

/// Forced cells of every ES grid with `m, n > 2`, plus the free star pairs.
///
/// The bottom row is full and every second row above it reads `101101...`.
/// The remaining rows are full apart from star pairs, exactly one lot of
/// each pair being empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ESTemplate {
    pub m: usize,
    pub n: usize,
    /// Rows holding star pairs, north first.
    pub star_rows: Vec<usize>,
    /// Western column of each star pair.
    pub pair_cols: Vec<usize>,
}

impl ESTemplate {
    pub fn pair_count(&self) -> usize {
        self.star_rows.len() * self.pair_cols.len()
    }

    /// Grid with star pair `(i, j)` emptied on the west when
    /// `west_empty(i, j)`, else on the east.
    pub fn fill(&self, west_empty: impl Fn(usize, usize) -> bool) -> Grid2D {
        let mut g = Grid2D::filled(self.m, self.n, true);
        for r in (1..self.m - 1).step_by(2) {
            for c in (1..self.n).step_by(3) {
                g.set(r, c, false);
            }
        }
        for (i, &r) in self.star_rows.iter().enumerate() {
            for (j, &c) in self.pair_cols.iter().enumerate() {
                let col = if west_empty(i, j) { c } else { c + 1 };
                g.set(r, col, false);
            }
        }
        g
    }
}

pub fn es_template(m: usize, n: usize) -> Result<ESTemplate> {
    es_precondition(m, n)?;
    Ok(ESTemplate {
        m,
        n,
        star_rows: (0..m - 2).step_by(2).collect(),
        pair_cols: (1..=(n - 3) / 3).map(|j| 3 * j - 1).collect(),
    })
}

/// Occupancy shared by all ES grids of this size, `mn - (m-1)(2n-3)/6`.
pub fn es_occupancy(m: usize, n: usize) -> Result<usize> {
    es_precondition(m, n)?;
    Ok(m * n - (m - 1) * (2 * n - 3) / 6)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// Western lot of the pair empty.
    L,
    /// Eastern lot of the pair empty.
    R,
}

/// Letter grid choosing the empty lot of each star pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LRGrid {
    rows: Vec<Vec<Letter>>,
}

/// Pair of vertically adjacent letter rows (upper over lower) is allowed.
fn rows_compatible(upper: &[Letter], lower: &[Letter]) -> bool {
    use Letter::{L, R};
    let n = upper.len();
    if n == 0 {
        return true;
    }
    if upper[0] == L && lower[0] == L {
        return false;
    }
    if upper[n - 1] == R && lower[n - 1] == R {
        return false;
    }
    (0..n.saturating_sub(1)).all(|j| {
        let low = lower[j] == R && lower[j + 1] == L;
        !(low && (upper[j] == R || upper[j + 1] == L))
    })
}

impl LRGrid {
    /// Fails on a ragged grid or one containing a forbidden constellation.
    pub fn new(rows: Vec<Vec<Letter>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("ragged letter grid".into()));
        }
        if !rows.windows(2).all(|w| rows_compatible(&w[0], &w[1])) {
            return Err(Error::Parse(
                "letter grid has a forbidden constellation".into(),
            ));
        }
        Ok(LRGrid { rows })
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows.len(), self.rows.first().map_or(0, Vec::len))
    }
}

impl fmt::Display for LRGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            for l in row {
                f.write_str(match l {
                    Letter::L => "L",
                    Letter::R => "R",
                })?;
            }
        }
        Ok(())
    }
}

impl FromStr for LRGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .split(['\n', '/'])
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|line| {
                line.chars()
                    .map(|ch| match ch {
                        'L' => Ok(Letter::L),
                        'R' => Ok(Letter::R),
                        other => Err(Error::Parse(format!("unexpected `{other}` in letter grid"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LRGrid::new(rows)
    }
}

fn letter_rows(cols: usize) -> Vec<Vec<Letter>> {
    (0..1usize << cols)
        .map(|bits| {
            (0..cols)
                .map(|j| {
                    if bits >> (cols - 1 - j) & 1 == 1 {
                        Letter::R
                    } else {
                        Letter::L
                    }
                })
                .collect()
        })
        .collect()
}

/// All valid `rows x cols` letter grids, lexicographic with `L < R`.
pub fn lr_enumerate(rows: usize, cols: usize) -> Vec<LRGrid> {
    fn go(acc: &mut Vec<Vec<Letter>>, rows: usize, choices: &[Vec<Letter>], out: &mut Vec<LRGrid>) {
        if acc.len() == rows {
            out.push(LRGrid { rows: acc.clone() });
            return;
        }
        for row in choices {
            if acc.last().is_none_or(|up| rows_compatible(up, row)) {
                acc.push(row.clone());
                go(acc, rows, choices, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), rows, &letter_rows(cols), &mut out);
    out
}

/// Number of valid `rows x cols` letter grids, by transfer over letter rows.
pub fn lr_count(rows: usize, cols: usize) -> BigUint {
    if rows == 0 {
        return BigUint::one();
    }
    let choices = letter_rows(cols);
    let k = choices.len();
    let compat: Vec<Vec<usize>> = (0..k)
        .map(|a| {
            (0..k)
                .filter(|&b| rows_compatible(&choices[a], &choices[b]))
                .collect()
        })
        .collect();
    let mut ways = vec![BigUint::one(); k];
    for _ in 1..rows {
        let mut next = vec![BigUint::zero(); k];
        for (a, w) in ways.iter().enumerate() {
            for &b in &compat[a] {
                next[b] += w;
            }
        }
        ways = next;
    }
    ways.into_iter().sum()
}

/// Expands a letter grid into the ES template; letter row 0 is the northern
/// star row and letter column 0 the western pair.
pub fn lr_to_es(lr: &LRGrid, m: usize, n: usize) -> Result<Grid2D> {
    let t = es_template(m, n)?;
    let dims = lr.dims();
    let want = (t.star_rows.len(), t.pair_cols.len());
    if dims != want && !(want.1 == 0 && dims.1 == 0) {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} letter grid for a {m}x{n} template needing {}x{}",
            dims.0, dims.1, want.0, want.1
        )));
    }
    Ok(t.fill(|i, j| lr.rows[i][j] == Letter::L))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EsMethod {
    Brute,
    Lr,
    /// Brute force within the cell cap, otherwise the letter-grid count.
    Auto,
}

impl FromStr for EsMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(EsMethod::Brute),
            "lr" => Ok(EsMethod::Lr),
            "auto" => Ok(EsMethod::Auto),
            other => Err(Error::Parse(format!("unknown es-count method `{other}`"))),
        }
    }
}

/// ES count from structure alone; thin grids reduce to one dimension.
fn es_count_structural(m: usize, n: usize) -> Result<BigUint> {
    if m == 0 || n == 0 {
        return Err(Error::DimensionMismatch(format!("{m}x{n} grid")));
    }
    if m == 1 || (n <= 2 && m > 2) {
        // Only the full grid: any empty lot would receive light from a border.
        return Ok(BigUint::one());
    }
    if m == 2 {
        let totals = totals_from_gf(&family_gf(Family::Es)?, Axis::Length, n)?;
        return Ok(totals[n].clone());
    }
    match es_template(m, n) {
        Ok(_) => Ok(lr_count((m - 1) / 2, (n - 3) / 3)),
        Err(Error::NoESExists { .. }) => Ok(BigUint::zero()),
        Err(e) => Err(e),
    }
}

pub fn es_count(m: usize, n: usize, method: EsMethod, caps: &Caps) -> Result<BigUint> {
    let brute = || -> Result<BigUint> { Ok(enumerate_2d(m, n, Family::Es, caps)?.len().into()) };
    match method {
        EsMethod::Brute => brute(),
        EsMethod::Lr => es_count_structural(m, n),
        EsMethod::Auto => match caps.check_cells(m, n) {
            Ok(()) => brute(),
            Err(_) => es_count_structural(m, n),
        },
    }
}
