use std::fmt;
use std::str::FromStr;

use crate::{Classification, Error, Result};

/// An `m x n` configuration; row 0 is north, column 0 is west.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grid2D {
    n: usize,
    rows: Vec<Vec<bool>>,
}

impl Grid2D {
    /// Fails on an empty or ragged grid.
    pub fn new(rows: Vec<Vec<bool>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "grid rows have lengths {:?}",
                rows.iter().map(Vec::len).collect::<Vec<_>>()
            )));
        }
        Ok(Grid2D { n, rows })
    }

    pub fn filled(m: usize, n: usize, value: bool) -> Self {
        assert!(m > 0 && n > 0, "grid dimensions must be positive");
        Grid2D {
            n,
            rows: vec![vec![value; n]; m],
        }
    }

    /// Rows as bitmasks with column 0 in the most significant of the low `n` bits.
    pub fn from_masks(masks: &[u32], n: usize) -> Self {
        let rows = masks
            .iter()
            .map(|&mask| (0..n).map(|c| mask >> (n - 1 - c) & 1 == 1).collect())
            .collect();
        Grid2D::new(rows).expect("masks describe a nonempty grid")
    }

    pub fn to_masks(&self) -> Vec<u32> {
        self.rows
            .iter()
            .map(|row| row.iter().fold(0u32, |acc, &b| acc << 1 | b as u32))
            .collect()
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r][c] = value;
    }

    pub fn occupancy(&self) -> usize {
        self.rows.iter().flatten().filter(|&&b| b).count()
    }

    pub fn row_occupancy(&self, r: usize) -> usize {
        self.rows[r].iter().filter(|&&b| b).count()
    }

    /// Occupied, treating lots outside the grid as empty.
    fn occ(&self, r: isize, c: isize, extra: Option<(usize, usize)>) -> bool {
        if r < 0 || c < 0 || r as usize >= self.m() || c as usize >= self.n {
            return false;
        }
        let (r, c) = (r as usize, c as usize);
        extra == Some((r, c)) || self.rows[r][c]
    }

    /// House at `(r, c)` has east, west and south all occupied, with `extra`
    /// counted as an additional house.
    fn blocked_with(&self, r: usize, c: usize, extra: Option<(usize, usize)>) -> bool {
        let (ri, ci) = (r as isize, c as isize);
        self.occ(ri, ci + 1, extra) && self.occ(ri, ci - 1, extra) && self.occ(ri + 1, ci, extra)
    }

    /// Existing houses west, east and north of `(r, c)`; these are the only
    /// houses a new house at `(r, c)` can shade.
    fn shaded_neighbours(&self, r: usize, c: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let cand = [
            (c > 0).then(|| (r, c - 1)),
            (c + 1 < self.n).then_some((r, c + 1)),
            (r > 0).then(|| (r - 1, c)),
        ];
        cand.into_iter().flatten().filter(|&(a, b)| self.rows[a][b])
    }

    fn empty_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.m())
            .flat_map(move |r| (0..self.n).map(move |c| (r, c)))
            .filter(|&(r, c)| !self.rows[r][c])
    }
}

impl fmt::Display for Grid2D {
    /// One line of `0`/`1` per row, north first, no trailing newline.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            for &b in row {
                f.write_str(if b { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl FromStr for Grid2D {
    type Err = Error;

    /// Rows separated by newlines or `/`; blank lines are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .split(['\n', '/'])
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|line| {
                line.chars()
                    .map(|ch| match ch {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(Error::Parse(format!("unexpected `{other}` in grid"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Grid2D::new(rows)
    }
}

pub fn is_permissible_2d(g: &Grid2D) -> bool {
    (0..g.m()).all(|r| (0..g.n()).all(|c| !g.get(r, c) || !g.blocked_with(r, c, None)))
}

/// Building at empty `(r, c)` keeps every house lit, including the new one.
pub fn can_build_2d(g: &Grid2D, r: usize, c: usize) -> bool {
    !g.get(r, c) && !g.blocked_with(r, c, Some((r, c))) && !harms_neighbour(g, r, c)
}

fn harms_neighbour(g: &Grid2D, r: usize, c: usize) -> bool {
    g.shaded_neighbours(r, c)
        .any(|(a, b)| g.blocked_with(a, b, Some((r, c))))
}

pub fn is_jammed_2d(g: &Grid2D) -> bool {
    is_permissible_2d(g) && g.empty_cells().all(|(r, c)| !can_build_2d(g, r, c))
}

/// Flags from the definitions, cell by cell.
pub fn classify_2d(g: &Grid2D) -> Classification {
    let permissible = is_permissible_2d(g);
    let jammed = is_jammed_2d(g);
    let p_resistant = jammed
        && g.empty_cells()
            .all(|(r, c)| g.blocked_with(r, c, Some((r, c))));
    let a_resistant = jammed && g.empty_cells().all(|(r, c)| harms_neighbour(g, r, c));
    Classification {
        permissible,
        jammed,
        p_resistant,
        a_resistant,
        es: p_resistant && a_resistant,
    }
}
