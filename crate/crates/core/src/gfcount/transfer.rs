use num_traits::Signed;

use super::{BiPoly, RationalGF};
use crate::enum1d::CountTable;
use crate::{Error, Family, Result};

/// Generating function `offset + start^T (I - step)^{-1} end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferSystem {
    start: Vec<BiPoly>,
    step: Vec<Vec<BiPoly>>,
    end: Vec<BiPoly>,
    offset: BiPoly,
}

impl TransferSystem {
    /// Fails if dimensions disagree or a step entry is not a single monomial.
    pub fn new(
        start: Vec<BiPoly>,
        step: Vec<Vec<BiPoly>>,
        end: Vec<BiPoly>,
        offset: BiPoly,
    ) -> Result<Self> {
        let d = step.len();
        if start.len() != d || end.len() != d || step.iter().any(|row| row.len() != d) {
            return Err(Error::DimensionMismatch(format!(
                "start {}, end {}, step rows {:?}",
                start.len(),
                end.len(),
                step.iter().map(Vec::len).collect::<Vec<_>>()
            )));
        }
        if let Some(bad) = step.iter().flatten().find(|p| p.terms().count() > 1) {
            return Err(Error::DimensionMismatch(format!(
                "step entry {bad} is not a monomial"
            )));
        }
        Ok(TransferSystem {
            start,
            step,
            end,
            offset,
        })
    }

    pub fn dim(&self) -> usize {
        self.step.len()
    }

    pub fn start(&self) -> &[BiPoly] {
        &self.start
    }

    pub fn step(&self) -> &[Vec<BiPoly>] {
        &self.step
    }

    pub fn end(&self) -> &[BiPoly] {
        &self.end
    }

    pub fn offset(&self) -> &BiPoly {
        &self.offset
    }

    /// Reduces to a single fraction by Cramer's rule on `I - step`.
    ///
    /// The denominator is `det(I - step)`, normalised to constant term 1.
    pub fn to_rational(&self) -> Result<RationalGF> {
        let d = self.dim();
        let m: Vec<Vec<BiPoly>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let id = if i == j {
                            BiPoly::one()
                        } else {
                            BiPoly::zero()
                        };
                        &id - &self.step[i][j]
                    })
                    .collect()
            })
            .collect();
        let mut den = determinant(m.clone());
        if den.is_zero() {
            return Err(Error::SingularSystem);
        }
        let mut num = &self.offset * &den;
        for (col, s) in self.start.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let mut mi = m.clone();
            for (row, e) in mi.iter_mut().zip(&self.end) {
                row[col] = e.clone();
            }
            num += &(s * &determinant(mi));
        }
        if den.constant_term().is_negative() {
            den = -&den;
            num = -&num;
        }
        RationalGF::new(num, den)
    }
}

/// Fraction-free Gaussian elimination; every intermediate division is exact.
fn determinant(mut m: Vec<Vec<BiPoly>>) -> BiPoly {
    let n = m.len();
    if n == 0 {
        return BiPoly::one();
    }
    let mut negate = false;
    let mut prev = BiPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return BiPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let cross = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = cross
                    .exact_div(&prev)
                    .expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

fn mono(c: i64, dx: u32, dy: u32) -> BiPoly {
    BiPoly::monomial(c, dx, dy)
}

/// Block decomposition of a family.
///
/// Riviera and altruist use blocks `01`, `011`, `0011` after a leading house;
/// ES uses `01`, `011`; Flory uses `01`, `001`. Row `i` of `step` weights block `j` following block `i`.
pub fn block_system(family: Family) -> Result<TransferSystem> {
    let z = BiPoly::zero;
    match family {
        Family::Riviera | Family::Altruist => {
            let b01 = || mono(1, 1, 2);
            let b011 = || mono(1, 2, 3);
            let b0011 = || mono(1, 2, 4);
            // Block 0011 never directly follows 01; altruists also forbid 01 after 01.
            let first = if family == Family::Riviera {
                b01()
            } else {
                z()
            };
            TransferSystem::new(
                vec![mono(1, 1, 1), mono(1, 2, 2), mono(1, 2, 3)],
                vec![
                    vec![first, b011(), z()],
                    vec![b01(), b011(), b0011()],
                    vec![b01(), b011(), b0011()],
                ],
                vec![
                    BiPoly::one(),
                    BiPoly::from_terms(&[(1, 0, 0), (1, 0, 1)]),
                    BiPoly::from_terms(&[(1, 0, 0), (1, 0, 1)]),
                ],
                BiPoly::one(),
            )
        }
        Family::Es => TransferSystem::new(
            vec![mono(1, 1, 1), mono(1, 2, 2)],
            vec![vec![z(), mono(1, 2, 3)], vec![mono(1, 1, 2), mono(1, 2, 3)]],
            vec![BiPoly::one(), BiPoly::one()],
            BiPoly::one(),
        ),
        // A house, optionally preceded by an empty lot, then blocks 01 and 001,
        // then an optional trailing empty lot.
        Family::Flory => {
            let tail = || BiPoly::from_terms(&[(1, 0, 0), (1, 0, 1)]);
            let row = || vec![mono(1, 1, 2), mono(1, 1, 3)];
            TransferSystem::new(
                vec![&mono(1, 1, 1) * &tail(), BiPoly::zero()],
                vec![row(), row()],
                vec![tail(), tail()],
                BiPoly::one(),
            )
        }
        Family::Predator => Err(Error::UnsupportedFamily {
            family,
            op: "block_system",
        }),
    }
}

pub fn gf_from_blocks(family: Family) -> Result<RationalGF> {
    block_system(family)?.to_rational()
}

/// Substrings excluded from maximal predator-resistant strings.
pub const PREDATOR_FORBIDDEN: [&str; 5] = ["111", "000", "0100", "0010", "00"];

/// Transfer digraph on windows of three lots; an edge appends one lot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    pub states: Vec<String>,
    /// `step[s][t]` is `x` to the occupancy of the appended lot, or zero.
    pub step: Vec<Vec<BiPoly>>,
    /// Weight of a string whose first three lots are the state.
    pub start: Vec<BiPoly>,
    /// 1 where the state may end a string.
    pub end: Vec<BiPoly>,
    /// Strings shorter than a window.
    pub head: Vec<BiPoly>,
}

fn admissible(s: &str, forbidden: &[&str]) -> bool {
    forbidden.iter().all(|f| !s.contains(f))
}

fn x_pow(s: &str) -> BiPoly {
    mono(1, s.bytes().filter(|&b| b == b'1').count() as u32, 0)
}

/// Digraph of strings avoiding `forbidden` whose first and last lots are occupied.
pub fn build_digraph(forbidden: &[&str]) -> Digraph {
    const W: usize = 3;
    let word = |bits: usize, len: usize| -> String {
        (0..len)
            .map(|i| {
                if bits >> (len - 1 - i) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    };
    let bordered = |s: &str| s.is_empty() || (s.starts_with('1') && s.ends_with('1'));

    let states: Vec<String> = (0..1usize << W)
        .map(|b| word(b, W))
        .filter(|s| admissible(s, forbidden))
        .collect();
    let step = states
        .iter()
        .map(|s| {
            states
                .iter()
                .map(|t| {
                    let joined = format!("{s}{}", &t[W - 1..]);
                    if s[1..] == t[..W - 1] && admissible(&joined, forbidden) {
                        x_pow(&t[W - 1..])
                    } else {
                        BiPoly::zero()
                    }
                })
                .collect()
        })
        .collect();
    let start = states
        .iter()
        .map(|s| {
            if s.starts_with('1') {
                x_pow(s)
            } else {
                BiPoly::zero()
            }
        })
        .collect();
    let end = states
        .iter()
        .map(|s| {
            if s.ends_with('1') {
                BiPoly::one()
            } else {
                BiPoly::zero()
            }
        })
        .collect();
    let head = (0..W)
        .map(|len| {
            let mut acc = BiPoly::zero();
            for b in 0..1usize << len {
                let s = word(b, len);
                if bordered(&s) && admissible(&s, forbidden) {
                    acc += &x_pow(&s);
                }
            }
            acc
        })
        .collect();
    Digraph {
        states,
        step,
        start,
        end,
        head,
    }
}

/// Predator counts from walks in the transfer digraph, for lengths `0..=n_max`.
pub fn gf_from_digraph(n_max: usize) -> CountTable {
    let g = build_digraph(&PREDATOR_FORBIDDEN);
    let mut table = CountTable::new(Family::Predator, n_max);
    let mut record = |n: usize, p: &BiPoly| {
        for (k, _, c) in p.terms() {
            let c = c.to_biguint().expect("walk counts are nonnegative");
            table.set(n, k as usize, c);
        }
    };
    for (n, h) in g.head.iter().enumerate().take(n_max + 1) {
        record(n, h);
    }
    let d = g.states.len();
    let mut v = g.start.clone();
    for n in g.head.len()..=n_max {
        let mut coeff = BiPoly::zero();
        for (vi, ei) in v.iter().zip(&g.end) {
            coeff += &(vi * ei);
        }
        record(n, &coeff);
        v = (0..d)
            .map(|j| {
                let mut acc = BiPoly::zero();
                for (i, vi) in v.iter().enumerate() {
                    acc += &(vi * &g.step[i][j]);
                }
                acc
            })
            .collect();
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfcount::gf_closed;
    use num_bigint::BigUint;

    fn big(n: u32) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn digraph_matches_published_matrix() {
        let g = build_digraph(&PREDATOR_FORBIDDEN);
        let order = ["011", "110", "101", "010"];
        let idx: Vec<usize> = order
            .iter()
            .map(|s| g.states.iter().position(|t| t == s).unwrap())
            .collect();
        let x = || mono(1, 1, 0);
        let (o, i) = (BiPoly::zero, BiPoly::one);
        let expected = [
            [o(), i(), o(), o()],
            [o(), o(), x(), o()],
            [x(), o(), o(), i()],
            [o(), o(), x(), o()],
        ];
        for (r, row) in expected.iter().enumerate() {
            for (c, want) in row.iter().enumerate() {
                assert_eq!(
                    &g.step[idx[r]][idx[c]], want,
                    "{} -> {}",
                    order[r], order[c]
                );
            }
        }
        let x2 = || mono(1, 2, 0);
        let a: Vec<_> = idx.iter().map(|&i| g.start[i].clone()).collect();
        assert_eq!(a, [o(), x2(), x2(), o()]);
        let b: Vec<_> = idx.iter().map(|&i| g.end[i].clone()).collect();
        assert_eq!(b, [i(), o(), i(), o()]);
        assert_eq!(g.states.len(), 4);
        assert_eq!(g.head, [BiPoly::one(), mono(1, 1, 0), mono(1, 2, 0)]);
    }

    #[test]
    fn digraph_coefficients() {
        let t = gf_from_digraph(12);
        assert_eq!(t.get(3, 2), big(1));
        assert_eq!(t.get(11, 7), big(10));
        assert_eq!(t.get(3, 3), big(0));
    }

    #[test]
    fn block_systems_reproduce_closed_forms() {
        for family in [Family::Riviera, Family::Altruist, Family::Es] {
            let blocks = gf_from_blocks(family).unwrap();
            assert!(blocks.cross_eq(&gf_closed(family).unwrap()), "{family}");
        }
        assert!(!gf_from_blocks(Family::Riviera)
            .unwrap()
            .cross_eq(&gf_closed(Family::Altruist).unwrap()));
    }

    #[test]
    fn singular_system_is_reported() {
        let sys = TransferSystem::new(
            vec![BiPoly::one()],
            vec![vec![BiPoly::one()]],
            vec![BiPoly::one()],
            BiPoly::zero(),
        )
        .unwrap();
        assert_eq!(sys.to_rational(), Err(Error::SingularSystem));
    }

    #[test]
    fn malformed_systems_are_rejected() {
        let two_terms = BiPoly::from_terms(&[(1, 1, 0), (1, 0, 1)]);
        assert!(TransferSystem::new(
            vec![BiPoly::one()],
            vec![vec![two_terms]],
            vec![BiPoly::one()],
            BiPoly::zero()
        )
        .is_err());
        assert!(TransferSystem::new(vec![], vec![vec![]], vec![], BiPoly::zero()).is_err());
    }

    #[test]
    fn determinant_of_known_matrix() {
        let c = |v: i64| BiPoly::monomial(v, 0, 0);
        let m = vec![
            vec![c(0), c(2), c(1)],
            vec![c(1), c(0), c(3)],
            vec![c(4), c(1), c(0)],
        ];
        // 0*(0-3) - 2*(0-12) + 1*(1-0)
        assert_eq!(determinant(m), c(25));
    }
}
