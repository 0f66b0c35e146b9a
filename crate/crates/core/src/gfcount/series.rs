use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::Zero;

use super::{family_gf, BiPoly, RationalGF};
use crate::enum1d::{Axis, CountTable};
use crate::{Error, Family, Result};

fn to_count(n: usize, k: usize, c: &BigInt) -> Result<BigUint> {
    c.to_biguint().ok_or_else(|| Error::NegativeCoefficient {
        n,
        k,
        value: c.to_string(),
    })
}

/// Coefficients `[x^k y^n]` of `gf` for `n <= n_max`, by long division in `y`.
///
/// The `y^0` part of the denominator must be exactly 1.
pub fn series_expand(family: Family, gf: &RationalGF, n_max: usize) -> Result<CountTable> {
    let den = gf.denominator();
    if den.y_coeff(0) != BiPoly::one() {
        return Err(Error::InvalidDenominator(format!(
            "y^0 part of {den} is not 1"
        )));
    }
    let d_y = den.deg_y().unwrap_or(0) as usize;
    let den_parts: Vec<BiPoly> = (0..=d_y as u32).map(|j| den.y_coeff(j)).collect();
    let mut rows: Vec<BiPoly> = Vec::with_capacity(n_max + 1);
    let mut table = CountTable::new(family, n_max);
    for n in 0..=n_max {
        let mut f = gf.numerator().y_coeff(n as u32);
        for (j, dj) in den_parts.iter().enumerate().skip(1).take(n) {
            f = &f - &(dj * &rows[n - j]);
        }
        for (k, _, c) in f.terms() {
            table.set(n, k as usize, to_count(n, k as usize, c)?);
        }
        rows.push(f);
    }
    Ok(table)
}

/// Rows `J(n, .)` for `n = 0, 1, 2, ...`, from the recurrence read off a
/// rational generating function.
///
/// Only as many previous rows as the denominator's `y`-degree are kept, so
/// long runs use memory linear in `n`.
#[derive(Debug, Clone)]
pub struct RecurrenceRows {
    /// `(a, b, c)` for each denominator term `c x^a y^b` with `b >= 1`.
    den: Vec<(usize, usize, BigInt)>,
    /// `num[n]` lists `(k, c)` for numerator terms `c x^k y^n`.
    num: Vec<Vec<(usize, BigInt)>>,
    /// `window[0]` is the most recent row.
    window: Vec<Vec<BigInt>>,
    depth: usize,
    n: usize,
}

impl RecurrenceRows {
    pub fn new(gf: &RationalGF) -> Result<Self> {
        let d = gf.denominator();
        if d.y_coeff(0) != BiPoly::one() {
            return Err(Error::InvalidDenominator(format!(
                "y^0 part of {d} is not 1"
            )));
        }
        let den: Vec<_> = d
            .terms()
            .filter(|&(_, b, _)| b >= 1)
            .map(|(a, b, c)| (a as usize, b as usize, c.clone()))
            .collect();
        let depth = den.iter().map(|t| t.1).max().unwrap_or(0);
        let mut num = vec![Vec::new(); gf.numerator().deg_y().map_or(0, |d| d as usize + 1)];
        for (k, n, c) in gf.numerator().terms() {
            num[n as usize].push((k as usize, c.clone()));
        }
        Ok(RecurrenceRows {
            den,
            num,
            window: Vec::new(),
            depth,
            n: 0,
        })
    }

    pub fn for_family(family: Family) -> Result<Self> {
        RecurrenceRows::new(&family_gf(family)?)
    }

    fn next_row(&mut self) -> Vec<BigInt> {
        let n = self.n;
        let mut row = vec![BigInt::zero(); n + 1];
        if let Some(terms) = self.num.get(n) {
            for (k, c) in terms {
                if *k <= n {
                    row[*k] += c;
                }
            }
        }
        for (a, b, c) in &self.den {
            let Some(prev) = self.window.get(b - 1) else {
                continue;
            };
            for (k, v) in prev.iter().enumerate() {
                if let Some(slot) = row.get_mut(k + a) {
                    *slot -= c * v;
                }
            }
        }
        self.window.insert(0, row.clone());
        self.window.truncate(self.depth);
        self.n += 1;
        row
    }
}

impl Iterator for RecurrenceRows {
    type Item = Result<Vec<BigUint>>;

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.n;
        let row = self.next_row();
        Some(
            row.iter()
                .enumerate()
                .map(|(k, c)| to_count(n, k, c))
                .collect(),
        )
    }
}

/// `J(n, k)` for `n <= n_max` via the recurrence of the family's generating function.
pub fn counts_by_recurrence(family: Family, n_max: usize) -> Result<CountTable> {
    let mut table = CountTable::new(family, n_max);
    for (n, row) in RecurrenceRows::for_family(family)?
        .take(n_max + 1)
        .enumerate()
    {
        for (k, c) in row?.into_iter().enumerate() {
            table.set(n, k, c);
        }
    }
    Ok(table)
}

/// Univariate specialisation of `p` along `axis`: `x = 1` for lengths, `y = 1` for occupancies.
pub fn specialise(p: &BiPoly, axis: Axis) -> Vec<BigInt> {
    match axis {
        Axis::Length => p.at_x_one(),
        Axis::Occupancy => p.at_y_one(),
    }
}

/// Totals along `axis` for indices `0..=upto`, by expanding the specialised
/// generating function. Needs no two-dimensional table.
pub fn totals_from_gf(gf: &RationalGF, axis: Axis, upto: usize) -> Result<Vec<BigUint>> {
    let num = specialise(gf.numerator(), axis);
    let den = specialise(gf.denominator(), axis);
    if den.first().is_none_or(|c| c != &BigInt::from(1)) {
        return Err(Error::InvalidDenominator(format!(
            "{axis} specialisation of {} has constant term other than 1",
            gf.denominator()
        )));
    }
    let mut c: Vec<BigInt> = Vec::with_capacity(upto + 1);
    for i in 0..=upto {
        let mut v = num.get(i).cloned().unwrap_or_default();
        for (j, dj) in den.iter().enumerate().skip(1).take(i) {
            v -= dj * &c[i - j];
        }
        c.push(v);
    }
    c.iter()
        .enumerate()
        .map(|(i, v)| match axis {
            Axis::Length => to_count(i, usize::MAX, v),
            Axis::Occupancy => to_count(usize::MAX, i, v),
        })
        .collect()
}

/// `C(n - k + 1, 2k - n - 1)`, zero outside the binomial's range.
///
/// Counts predator-resistant strings for `n >= 1`; the empty string is not covered.
pub fn predator_closed_form(k: usize, n: usize) -> BigUint {
    if k > n || 2 * k < n + 1 {
        return BigUint::zero();
    }
    let top = n - k + 1;
    let bottom = 2 * k - n - 1;
    if bottom > top {
        return BigUint::zero();
    }
    binomial(BigUint::from(top), BigUint::from(bottom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfcount::{gf_closed, gf_from_digraph};

    fn big(n: u32) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn series_examples() {
        let p = series_expand(Family::Predator, &gf_closed(Family::Predator).unwrap(), 12).unwrap();
        assert_eq!(p.get(3, 2), big(1));
        assert_eq!(p.get(11, 7), big(10));
        let es = series_expand(Family::Es, &gf_closed(Family::Es).unwrap(), 6).unwrap();
        assert_eq!(
            es.row(4).map(|(k, c)| (k, c.clone())).collect::<Vec<_>>(),
            [(3, big(2))]
        );
        let a = series_expand(Family::Altruist, &gf_closed(Family::Altruist).unwrap(), 11).unwrap();
        assert!(a.get(11, 7) >= big(1));
    }

    #[test]
    fn recurrence_examples() {
        let p = counts_by_recurrence(Family::Predator, 11).unwrap();
        assert_eq!(p.get(11, 7), big(10));
        let a = counts_by_recurrence(Family::Altruist, 4).unwrap();
        // 0110 is jammed with no altruist site
        assert_eq!(a.get(4, 2), big(1));
        assert_eq!(a.get(4, 3), big(2));
        let es = counts_by_recurrence(Family::Es, 3).unwrap();
        assert_eq!(es.row(3).count(), 0);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(predator_closed_form(7, 11), big(10));
        assert_eq!(predator_closed_form(2, 3), big(1));
        assert_eq!(predator_closed_form(3, 3), big(0));
        assert_eq!(predator_closed_form(5, 3), big(0));
    }

    #[test]
    fn negative_coefficients_are_flagged() {
        let gf =
            RationalGF::new(BiPoly::from_terms(&[(1, 0, 0), (-1, 1, 1)]), BiPoly::one()).unwrap();
        assert_eq!(
            series_expand(Family::Es, &gf, 3).unwrap_err(),
            Error::NegativeCoefficient {
                n: 1,
                k: 1,
                value: "-1".into()
            }
        );
        assert!(RecurrenceRows::new(&gf).unwrap().nth(1).unwrap().is_err());
    }

    #[test]
    fn methods_agree_to_order_forty() {
        for family in [
            Family::Riviera,
            Family::Predator,
            Family::Altruist,
            Family::Es,
        ] {
            let gf = gf_closed(family).unwrap();
            let s = series_expand(family, &gf, 40).unwrap();
            let r = counts_by_recurrence(family, 40).unwrap();
            assert_eq!(s, r, "{family}");
        }
        let s = series_expand(Family::Predator, &gf_closed(Family::Predator).unwrap(), 40).unwrap();
        assert_eq!(gf_from_digraph(40), s);
        for (n, k, c) in s.iter().filter(|e| e.0 >= 1) {
            assert_eq!(&predator_closed_form(k, n), c, "({n}, {k})");
        }
    }

    #[test]
    fn flory_counts_match_brute_force() {
        let brute =
            crate::enum1d::count_table_brute(16, Family::Flory, &crate::Caps::default()).unwrap();
        assert_eq!(counts_by_recurrence(Family::Flory, 16).unwrap(), brute);
    }

    #[test]
    fn specialised_totals_match_tables() {
        for family in Family::ALL {
            let gf = family_gf(family).unwrap();
            let t = counts_by_recurrence(family, 30).unwrap();
            let k_max = t.max_covered_occupancy().unwrap();
            for (axis, upto) in [(Axis::Length, 30), (Axis::Occupancy, k_max)] {
                assert_eq!(
                    totals_from_gf(&gf, axis, upto).unwrap(),
                    t.totals(axis, upto).unwrap(),
                    "{family} {axis}"
                );
            }
        }
    }

    #[test]
    fn rows_stream_without_table() {
        let row = RecurrenceRows::for_family(Family::Predator)
            .unwrap()
            .nth(300)
            .unwrap()
            .unwrap();
        assert_eq!(row.len(), 301);
        assert_eq!(row[180], predator_closed_form(180, 300));
    }
}
