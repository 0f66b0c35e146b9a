use num_bigint::BigInt;
use serde_json::{json, Value};

use riviera_core::complexity::{
    complexity_curve, s_closed, s_empirical_many, support, Method, SupportInterval,
};
use riviera_core::enum1d::count_table_brute_with;
use riviera_core::gfcount::{
    counts_by_recurrence, family_gf, gf_from_blocks, gf_from_digraph, predator_closed_form,
    series_expand, specialise, totals_from_gf, RecurrenceRows,
};
use riviera_core::grid2d::{
    enumerate_2d_with, es_count, es_occupancy, generate_pattern, min_occupancy_bound, EsMethod,
    Grid2D, Pattern,
};
use riviera_core::{Axis, Caps, CountTable, Error, Exec, Family};

use crate::table::{Cell, Table};
use crate::Failure;

pub struct Ctx {
    pub caps: Caps,
    pub exec: Exec,
}

pub struct Report {
    pub table: Table,
    /// Plain rendering for commands that print grids or a single number.
    pub text: Option<String>,
    pub args: Value,
    /// Set when a cross-check failed; the table is still emitted.
    pub mismatch: Option<String>,
}

impl Report {
    fn table(table: Table, args: Value) -> Self {
        Report {
            table,
            text: None,
            args,
            mismatch: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Brute,
    Series,
    Recurrence,
    ClosedForm,
    Digraph,
    /// Expansion of the block-system generating function.
    Blocks,
}

impl CountMethod {
    pub fn name(self) -> &'static str {
        match self {
            CountMethod::Brute => "brute",
            CountMethod::Series => "series",
            CountMethod::Recurrence => "recurrence",
            CountMethod::ClosedForm => "closed-form",
            CountMethod::Digraph => "digraph",
            CountMethod::Blocks => "blocks",
        }
    }

    /// Smallest length the method covers.
    fn first_length(self) -> usize {
        if self == CountMethod::ClosedForm {
            1
        } else {
            0
        }
    }
}

fn predator_only(family: Family, op: &'static str) -> Result<(), Error> {
    if family == Family::Predator {
        Ok(())
    } else {
        Err(Error::UnsupportedFamily { family, op })
    }
}

fn count_table(
    ctx: &Ctx,
    family: Family,
    n_max: usize,
    method: CountMethod,
) -> Result<CountTable, Error> {
    match method {
        CountMethod::Brute => count_table_brute_with(n_max, family, &ctx.caps, ctx.exec),
        CountMethod::Series => series_expand(family, &family_gf(family)?, n_max),
        CountMethod::Recurrence => counts_by_recurrence(family, n_max),
        CountMethod::Blocks => series_expand(family, &gf_from_blocks(family)?, n_max),
        CountMethod::Digraph => {
            predator_only(family, "digraph counts")?;
            Ok(gf_from_digraph(n_max))
        }
        CountMethod::ClosedForm => {
            predator_only(family, "closed-form counts")?;
            let mut t = CountTable::new(family, n_max);
            for n in 1..=n_max {
                for k in 0..=n {
                    t.set(n, k, predator_closed_form(k, n));
                }
            }
            Ok(t)
        }
    }
}

fn drop_short(t: &CountTable, from: usize) -> CountTable {
    let mut out = CountTable::new(t.family(), t.max_length());
    for (n, k, c) in t.iter().filter(|(n, _, _)| *n >= from) {
        out.set(n, k, c.clone());
    }
    out
}

pub fn count(
    ctx: &Ctx,
    family: Family,
    n_max: usize,
    method: CountMethod,
) -> Result<Report, Failure> {
    let counts = count_table(ctx, family, n_max, method)?;
    let mut table = Table::new(&["family", "n", "k", "count"]);
    for (n, k, c) in counts.iter() {
        table.push(vec![
            Cell::text(family.name()),
            Cell::int(n),
            Cell::int(k),
            Cell::count(c),
        ]);
    }
    let args = json!({ "family": family.name(), "n_max": n_max, "method": method.name() });
    Ok(Report::table(table, args))
}

fn verify_methods(family: Family) -> Vec<CountMethod> {
    let mut methods = vec![CountMethod::Series, CountMethod::Recurrence];
    match family {
        Family::Riviera | Family::Altruist | Family::Es => methods.push(CountMethod::Blocks),
        Family::Predator => methods.extend([CountMethod::ClosedForm, CountMethod::Digraph]),
        // the canonical Flory generating function already comes from blocks
        Family::Flory => {}
    }
    methods
}

/// Compares every applicable method against brute force.
pub fn verify(ctx: &Ctx, family: Family, n_max: usize) -> Result<Report, Failure> {
    let brute = count_table(ctx, family, n_max, CountMethod::Brute)?;
    let mut table = Table::new(&[
        "family",
        "method",
        "reference",
        "n_from",
        "n_max",
        "status",
        "first_n",
        "first_k",
    ]);
    let mut mismatch = None;
    for method in verify_methods(family) {
        let from = method.first_length();
        let other = count_table(ctx, family, n_max, method)?;
        let diff = drop_short(&brute, from).first_difference(&drop_short(&other, from));
        if let (Some((n, k)), None) = (diff, &mismatch) {
            mismatch = Some(format!(
                "{} differs from brute force at (n, k) = ({n}, {k}): {} vs {}",
                method.name(),
                other.get(n, k),
                brute.get(n, k)
            ));
        }
        table.push(vec![
            Cell::text(family.name()),
            Cell::text(method.name()),
            Cell::text("brute"),
            Cell::int(from),
            Cell::int(n_max),
            Cell::text(if diff.is_some() { "differ" } else { "agree" }),
            diff.map_or(Cell::Empty, |(n, _)| Cell::int(n)),
            diff.map_or(Cell::Empty, |(_, k)| Cell::int(k)),
        ]);
    }
    Ok(Report {
        mismatch,
        ..Report::table(table, json!({ "family": family.name(), "n_max": n_max }))
    })
}

/// Totals along `axis`, with `sum_j q_j c_{i-j}` for the specialised
/// denominator `q`; the residual vanishes past the numerator's degree.
pub fn sequence(family: Family, axis: Axis, max: usize) -> Result<Report, Failure> {
    let gf = family_gf(family)?;
    let totals = totals_from_gf(&gf, axis, max)?;
    let q = specialise(gf.denominator(), axis);
    let mut table = Table::new(&["family", "axis", "index", "total", "residual"]);
    for (i, total) in totals.iter().enumerate() {
        let residual: BigInt = q
            .iter()
            .take(i + 1)
            .enumerate()
            .map(|(j, qj)| qj * BigInt::from(totals[i - j].clone()))
            .sum();
        table.push(vec![
            Cell::text(family.name()),
            Cell::text(axis.to_string()),
            Cell::int(i),
            Cell::count(total),
            Cell::count(residual),
        ]);
    }
    let args = json!({ "family": family.name(), "axis": axis.to_string(), "max": max });
    Ok(Report::table(table, args))
}

/// `points` densities from `from` to `to` inclusive.
fn inclusive_grid(from: f64, to: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![from];
    }
    let h = (to - from) / (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i + 1 == points {
                to
            } else {
                from + h * i as f64
            }
        })
        .collect()
}

pub fn complexity(
    ctx: &Ctx,
    family: Family,
    method: Method,
    range: Option<(f64, f64)>,
    points: usize,
) -> Result<Report, Failure> {
    let rhos = match range {
        Some((from, to)) => inclusive_grid(from, to, points),
        None => match support(family) {
            Ok(s) => s.interior_grid(points),
            Err(_) => {
                return Err(Failure::Usage(format!(
                    "{family} has no closed-form support; pass --rho-from and --rho-to"
                )))
            }
        },
    };
    let curve = complexity_curve(family, method, &rhos, ctx.exec)?;
    let (columns, n): (&[&'static str], _) = match method {
        Method::Closed => (&["family", "method", "rho", "s"], None),
        Method::Kl => (
            &["family", "method", "rho", "s", "x0", "y0", "s_closed"],
            None,
        ),
        Method::Empirical(n) => (&["family", "method", "n", "rho", "s"], Some(n)),
    };
    let label = match method {
        Method::Empirical(_) => "empirical".to_string(),
        m => m.to_string(),
    };
    let mut table = Table::new(columns);
    for p in &curve {
        let mut row = vec![Cell::text(family.name()), Cell::text(label.as_str())];
        if let Some(n) = n {
            row.push(Cell::int(n));
        }
        row.extend([Cell::Float(p.rho), Cell::Float(p.s)]);
        if method == Method::Kl {
            row.extend([
                Cell::opt_float(p.x0),
                Cell::opt_float(p.y0),
                Cell::opt_float(s_closed(family, p.rho).ok()),
            ]);
        }
        table.push(row);
    }
    let args = json!({
        "family": family.name(),
        "method": label,
        "n": n,
        "rho_from": range.map(|r| r.0),
        "rho_to": range.map(|r| r.1),
        "points": points,
    });
    Ok(Report::table(table, args))
}

/// Closed curves for the resistant families, and empirical jammed-Riviera
/// points across the densities present at length `n`.
pub fn seed_figures(points: usize, n: usize) -> Result<Report, Failure> {
    let mut table = Table::new(&["family", "method", "n", "rho", "s"]);
    for family in [Family::Predator, Family::Altruist, Family::Es] {
        for rho in support(family)?.interior_grid(points) {
            table.push(vec![
                Cell::text(family.name()),
                Cell::text("closed"),
                Cell::Empty,
                Cell::Float(rho),
                Cell::Float(s_closed(family, rho)?),
            ]);
        }
    }
    let row = RecurrenceRows::for_family(Family::Riviera)?
        .nth(n)
        .expect("recurrence rows are unbounded")?;
    let occupied: Vec<usize> = row
        .iter()
        .enumerate()
        .filter(|(_, c)| c.bits() > 0)
        .map(|(k, _)| k)
        .collect();
    if let (Some(&lo), Some(&hi)) = (occupied.first(), occupied.last()) {
        let span = SupportInterval {
            lo: lo as f64 / n as f64,
            hi: hi as f64 / n as f64,
        };
        let rhos = span.interior_grid(points);
        for (rho, s) in rhos
            .iter()
            .zip(s_empirical_many(Family::Riviera, &rhos, n)?)
        {
            table.push(vec![
                Cell::text(Family::Riviera.name()),
                Cell::text("empirical"),
                Cell::int(n),
                Cell::Float(*rho),
                Cell::Float(s),
            ]);
        }
    }
    Ok(Report::table(table, json!({ "points": points, "n": n })))
}

/// Grid in the one-line form of the text codec.
fn inline(g: &Grid2D) -> String {
    g.to_string().replace('\n', "/")
}

pub fn enumerate(ctx: &Ctx, m: usize, n: usize, family: Family) -> Result<Report, Failure> {
    let grids = enumerate_2d_with(m, n, family, &ctx.caps, ctx.exec)?;
    let mut table = Table::new(&["index", "occupancy", "grid"]);
    let mut text = String::new();
    for (i, g) in grids.iter().enumerate() {
        table.push(vec![
            Cell::int(i),
            Cell::int(g.occupancy()),
            Cell::text(inline(g)),
        ]);
        if i > 0 {
            text.push('\n');
        }
        text.push_str(&format!("{g}\n"));
    }
    Ok(Report {
        text: Some(text),
        ..Report::table(table, json!({ "m": m, "n": n, "family": family.name() }))
    })
}

pub fn es_count_job(
    ctx: &Ctx,
    m: usize,
    n: usize,
    method: EsMethod,
    name: &str,
) -> Result<Report, Failure> {
    let count = es_count(m, n, method, &ctx.caps)?;
    let mut table = Table::new(&["m", "n", "method", "count"]);
    table.push(vec![
        Cell::int(m),
        Cell::int(n),
        Cell::text(name),
        Cell::count(&count),
    ]);
    Ok(Report {
        text: Some(format!("{count}\n")),
        ..Report::table(table, json!({ "m": m, "n": n, "method": name }))
    })
}

pub fn pattern(pattern: Pattern, m: usize, n: usize) -> Result<Report, Failure> {
    let g = generate_pattern(pattern, m, n)?;
    let mut table = Table::new(&["pattern", "m", "n", "occupancy", "grid"]);
    table.push(vec![
        Cell::text(pattern.name()),
        Cell::int(m),
        Cell::int(n),
        Cell::int(g.occupancy()),
        Cell::text(inline(&g)),
    ]);
    Ok(Report {
        text: Some(format!("{g}\n")),
        ..Report::table(table, json!({ "pattern": pattern.name(), "m": m, "n": n }))
    })
}

pub fn bounds(m: usize, n: usize) -> Result<Report, Failure> {
    if m < 2 || n < 2 {
        return Err(Failure::Usage("bounds need m, n >= 2".into()));
    }
    let es_occ = match es_occupancy(m, n) {
        Ok(v) => Cell::int(v),
        Err(Error::NoESExists { .. }) => Cell::Empty,
        Err(e) => return Err(e.into()),
    };
    let es = es_count(m, n, EsMethod::Lr, &Caps::default())?;
    let mut table = Table::new(&["m", "n", "min_occupancy", "es_occupancy", "es_count"]);
    table.push(vec![
        Cell::int(m),
        Cell::int(n),
        Cell::int(min_occupancy_bound(m, n)),
        es_occ,
        Cell::count(es),
    ]);
    Ok(Report::table(table, json!({ "m": m, "n": n })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusive_grid_hits_both_ends() {
        let g = inclusive_grid(0.55, 0.65, 3);
        assert_eq!(g, vec![0.55, 0.6000000000000001, 0.65]);
        assert_eq!(inclusive_grid(0.6, 0.7, 1), vec![0.6]);
    }

    #[test]
    fn residual_vanishes_past_numerator() {
        let r = sequence(Family::Predator, Axis::Length, 30).unwrap();
        let num_deg = family_gf(Family::Predator)
            .unwrap()
            .numerator()
            .at_x_one()
            .len();
        for row in &r.table.rows[num_deg..] {
            assert_eq!(row[4], Cell::count(0));
        }
    }
}
