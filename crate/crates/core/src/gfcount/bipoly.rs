use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Sparse polynomial in `x` (occupancy marker) and `y` (length marker) with
/// arbitrary-precision integer coefficients.
///
/// Keys are `(deg_x, deg_y)`; zero coefficients are never stored. The
/// derived ordering of keys is lexicographic with `x > y`, which is the
/// monomial order used by [`BiPoly::exact_div`].
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::monomial(1, 0, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, deg_x: u32, deg_y: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(deg_x, deg_y, coeff.into());
        p
    }

    /// Builds a polynomial from `(coefficient, deg_x, deg_y)` triples; repeated
    /// monomials are summed.
    pub fn from_terms(terms: &[(i64, u32, u32)]) -> Self {
        let mut p = BiPoly::zero();
        for &(c, dx, dy) in terms {
            p.add_term(dx, dy, BigInt::from(c));
        }
        p
    }

    fn add_term(&mut self, dx: u32, dy: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((dx, dy)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(dx, dy));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms as `(deg_x, deg_y, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(dx, dy), c)| (dx, dy, c))
    }

    pub fn coeff(&self, deg_x: u32, deg_y: u32) -> BigInt {
        self.terms.get(&(deg_x, deg_y)).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0, 0)
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, dy)| dy).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(dx, _)| dx).max()
    }

    /// Coefficient of `y^j`, as a polynomial in `x` alone.
    pub fn y_coeff(&self, j: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(_, dy), _)| dy == j)
                .map(|(&(dx, _), c)| ((dx, 0), c.clone()))
                .collect(),
        }
    }

    /// Multiplies by `x^dx y^dy`.
    pub fn shift(&self, dx: u32, dy: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + dx, b + dy), c.clone()))
                .collect(),
        }
    }

    /// Coefficients of the univariate polynomial obtained by setting `x = 1`,
    /// indexed by the power of `y`.
    pub fn at_x_one(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.deg_y().map_or(0, |d| d as usize + 1)];
        for (_, dy, c) in self.terms() {
            out[dy as usize] += c;
        }
        out
    }

    /// Coefficients of the univariate polynomial obtained by setting `y = 1`,
    /// indexed by the power of `x`.
    pub fn at_y_one(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.deg_x().map_or(0, |d| d as usize + 1)];
        for (dx, _, c) in self.terms() {
            out[dx as usize] += c;
        }
        out
    }

    /// Euler operator `x d/dx`.
    pub fn theta_x(&self) -> BiPoly {
        let mut p = BiPoly::zero();
        for (dx, dy, c) in self.terms() {
            p.add_term(dx, dy, c * BigInt::from(dx));
        }
        p
    }

    /// Euler operator `y d/dy`.
    pub fn theta_y(&self) -> BiPoly {
        let mut p = BiPoly::zero();
        for (dx, dy, c) in self.terms() {
            p.add_term(dx, dy, c * BigInt::from(dy));
        }
        p
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms()
            .map(|(dx, dy, c)| {
                c.to_f64().unwrap_or(f64::NAN) * x.powi(dx as i32) * y.powi(dy as i32)
            })
            .sum()
    }

    /// Evaluates at `x = e^u`, `y = e^v`; stays finite where `x` or `y` alone would not.
    pub fn eval_log(&self, u: f64, v: f64) -> f64 {
        self.terms()
            .map(|(dx, dy, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                c.signum() * (c.abs().ln() + dx as f64 * u + dy as f64 * v).exp()
            })
            .sum()
    }

    fn leading(&self) -> Option<((u32, u32), &BigInt)> {
        self.terms.iter().next_back().map(|(&k, c)| (k, c))
    }

    /// Quotient `self / divisor` when the division is exact over the integers.
    pub fn exact_div(&self, divisor: &BiPoly) -> Option<BiPoly> {
        let ((ldx, ldy), lc) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = BiPoly::zero();
        while let Some(((rdx, rdy), rc)) = rem.leading() {
            if rdx < ldx || rdy < ldy {
                return None;
            }
            let (q, r) = rc.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            let step = BiPoly::monomial(q, rdx - ldx, rdy - ldy);
            rem = &rem - &(&step * divisor);
            quot += &step;
        }
        Some(quot)
    }

    pub fn has_negative_coefficient(&self) -> bool {
        self.terms.values().any(Signed::is_negative)
    }
}

impl AddAssign<&BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: &BiPoly) {
        for (&(dx, dy), c) in &rhs.terms {
            self.add_term(dx, dy, c.clone());
        }
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;

    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(dx, dy), c) in &rhs.terms {
            out.add_term(dx, dy, -c);
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(d, e), f) in &rhs.terms {
                out.add_term(a + d, b + e, c * f);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

fn write_power(f: &mut fmt::Formatter<'_>, var: &str, deg: u32) -> fmt::Result {
    match deg {
        0 => Ok(()),
        1 => f.write_str(var),
        d => write!(f, "{var}^{d}"),
    }
}

impl fmt::Display for BiPoly {
    /// Terms in increasing total degree, e.g. `1 - x*y^2 - x^2*y^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(dx, dy)| (dx + dy, dy, dx));
        for (i, (dx, dy)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(dx, dy)];
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let monomial = dx > 0 || dy > 0;
            if !monomial || !mag.is_one() {
                write!(f, "{mag}")?;
                if monomial {
                    f.write_str("*")?;
                }
            }
            write_power(f, "x", dx)?;
            if dx > 0 && dy > 0 {
                f.write_str("*")?;
            }
            write_power(f, "y", dy)?;
        }
        Ok(())
    }
}
