use std::fmt;

use num_traits::One;

use super::BiPoly;
use crate::{Error, Family, Result};

/// `numerator / denominator` as a formal power series in `x` and `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    numerator: BiPoly,
    denominator: BiPoly,
}

impl RationalGF {
    /// Fails unless the denominator has constant term 1.
    pub fn new(numerator: BiPoly, denominator: BiPoly) -> Result<Self> {
        if !denominator.constant_term().is_one() {
            return Err(Error::InvalidDenominator(format!(
                "constant term of {denominator} is not 1"
            )));
        }
        Ok(RationalGF {
            numerator,
            denominator,
        })
    }

    pub fn numerator(&self) -> &BiPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &BiPoly {
        &self.denominator
    }

    /// Equality as rational functions: `N1 * D2 == N2 * D1`.
    pub fn cross_eq(&self, other: &RationalGF) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

/// `(coefficient, deg_x, deg_y)` triples.
type Terms = &'static [(i64, u32, u32)];

/// Closed-form generating function `sum J(n, k) x^k y^n` of a family.
///
/// Flory configurations have no closed form here; see [`family_gf`].
pub fn gf_closed(family: Family) -> Result<RationalGF> {
    let (num, den): (Terms, Terms) = match family {
        Family::Predator => (
            &[(1, 0, 0), (1, 1, 1), (-1, 1, 2), (1, 2, 2), (-1, 2, 3)],
            &[(1, 0, 0), (-1, 1, 2), (-1, 2, 3)],
        ),
        Family::Riviera => (
            &[
                (1, 0, 0),
                (1, 1, 1),
                (-1, 1, 2),
                (1, 2, 2),
                (1, 2, 3),
                (-1, 3, 5),
            ],
            &[(1, 0, 0), (-1, 1, 2), (-1, 2, 3), (-1, 2, 4), (1, 3, 6)],
        ),
        Family::Altruist => (
            &[(1, 0, 0), (1, 1, 1), (1, 2, 2), (1, 2, 3), (1, 3, 4)],
            &[(1, 0, 0), (-1, 2, 3), (-1, 2, 4), (-1, 3, 5)],
        ),
        Family::Es => (
            &[
                (1, 0, 0),
                (1, 1, 1),
                (1, 2, 2),
                (-1, 2, 3),
                (1, 3, 4),
                (-1, 3, 5),
            ],
            &[(1, 0, 0), (-1, 2, 3), (-1, 3, 5)],
        ),
        Family::Flory => {
            return Err(Error::UnsupportedFamily {
                family,
                op: "gf_closed",
            })
        }
    };
    RationalGF::new(BiPoly::from_terms(num), BiPoly::from_terms(den))
}

/// Generating function of any family: the closed form where one exists,
/// otherwise the reduction of the family's block system.
pub fn family_gf(family: Family) -> Result<RationalGF> {
    match family {
        Family::Flory => super::block_system(family)?.to_rational(),
        _ => gf_closed(family),
    }
}
