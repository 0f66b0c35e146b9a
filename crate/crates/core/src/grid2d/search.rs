//! Row-by-row backtracking over bitmask rows.
//!
//! Whether a lot is blocked or buildable depends only on its own row and the
//! rows directly north and south, so row `i - 1` is final once row `i` is
//! placed and is checked then.

use super::Grid2D;
use crate::{Caps, Error, Exec, Family, Result};

/// Lots whose eastern neighbour is occupied; beyond the grid counts as empty.
fn east(row: u32, full: u32) -> u32 {
    (row << 1) & full
}

/// Lots whose western neighbour is occupied.
fn west(row: u32) -> u32 {
    row >> 1
}

/// Whether row `r` satisfies the family's local conditions, given its north
/// neighbour (0 for the top row) and south neighbour (`None` at the bottom).
pub(crate) fn row_ok(family: Family, north: u32, row: u32, south: Option<u32>, n: usize) -> bool {
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let s = south.unwrap_or(0);
    let (e, w) = (east(row, full), west(row));
    if row & e & w & s != 0 {
        return false;
    }
    let empty = !row & full;
    let self_blocked = e & w & s;
    let west_shaded = w & (row >> 2) & (s >> 1);
    let east_shaded = e & ((row << 2) & full) & ((s << 1) & full);
    let north_shaded = north & east(north, full) & west(north);
    let harms = west_shaded | east_shaded | north_shaded;
    if empty & !self_blocked & !harms != 0 {
        return false;
    }
    let p_ok = empty & !self_blocked == 0;
    let a_ok = empty & !harms == 0;
    match family {
        Family::Riviera => true,
        Family::Predator => p_ok,
        Family::Altruist => a_ok,
        Family::Es => p_ok && a_ok,
        Family::Flory => unreachable!("rejected before search"),
    }
}

fn extend(rows: &mut Vec<u32>, m: usize, n: usize, family: Family, out: &mut Vec<Vec<u32>>) {
    let i = rows.len();
    if i == m {
        let north = if m >= 2 { rows[m - 2] } else { 0 };
        if row_ok(family, north, rows[m - 1], None, n) {
            out.push(rows.clone());
        }
        return;
    }
    for mask in 0..1u32 << n {
        if i >= 1 {
            let north = if i >= 2 { rows[i - 2] } else { 0 };
            if !row_ok(family, north, rows[i - 1], Some(mask), n) {
                continue;
            }
        }
        rows.push(mask);
        extend(rows, m, n, family, out);
        rows.pop();
    }
}

/// Every `m x n` family member in row-major lexicographic order.
pub fn enumerate_2d(m: usize, n: usize, family: Family, caps: &Caps) -> Result<Vec<Grid2D>> {
    enumerate_2d_with(m, n, family, caps, Exec::default())
}

pub fn enumerate_2d_with(
    m: usize,
    n: usize,
    family: Family,
    caps: &Caps,
    exec: Exec,
) -> Result<Vec<Grid2D>> {
    if family == Family::Flory {
        return Err(Error::UnsupportedFamily {
            family,
            op: "enumerate_2d",
        });
    }
    if m == 0 || n == 0 {
        return Err(Error::DimensionMismatch(format!("{m}x{n} grid")));
    }
    caps.check_cells(m, n)?;
    let firsts: Vec<u32> = (0..1u32 << n).collect();
    let parts = exec.map(firsts, |first| {
        let mut out = Vec::new();
        extend(&mut vec![first], m, n, family, &mut out);
        out
    });
    Ok(parts
        .into_iter()
        .flatten()
        .map(|masks| Grid2D::from_masks(&masks, n))
        .collect())
}
