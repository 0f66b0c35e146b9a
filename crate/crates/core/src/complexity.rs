//! Configurational entropy `S(rho)`: closed forms, the kernel method on a
//! generating-function denominator, and direct estimates from exact counts.
//!
//! Densities are open-interval quantities; endpoints are rejected rather
//! than evaluated as `0 ln 0` limits.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::exec::Exec;
use crate::gfcount::{family_gf, specialise, BiPoly, RecurrenceRows};
use crate::{Axis, Error, Family, Result};

/// Open density interval on which a family's entropy is positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportInterval {
    pub lo: f64,
    pub hi: f64,
}

impl SupportInterval {
    pub fn contains(&self, rho: f64) -> bool {
        self.lo < rho && rho < self.hi
    }

    /// `points` equally spaced densities strictly inside the interval.
    pub fn interior_grid(&self, points: usize) -> Vec<f64> {
        let h = (self.hi - self.lo) / (points + 1) as f64;
        (1..=points).map(|i| self.lo + h * i as f64).collect()
    }

    fn check(&self, rho: f64) -> Result<()> {
        if self.contains(rho) {
            Ok(())
        } else {
            Err(Error::OutOfSupport {
                rho,
                lo: self.lo,
                hi: self.hi,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Closed,
    Kl,
    /// Exact counts at the given length.
    Empirical(usize),
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Closed => f.write_str("closed"),
            Method::Kl => f.write_str("kl"),
            Method::Empirical(n) => write!(f, "empirical({n})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexityPoint {
    pub rho: f64,
    pub s: f64,
    /// Kernel-method solution; `None` for other methods.
    pub x0: Option<f64>,
    pub y0: Option<f64>,
    pub method: Method,
}

/// `S = sum sign * (a rho + b) ln(a rho + b)` as `(sign, a, b)` triples.
fn closed_terms(family: Family) -> Result<[(f64, f64, f64); 3]> {
    Ok(match family {
        Family::Predator | Family::Altruist => {
            [(1.0, -1.0, 1.0), (-1.0, 2.0, -1.0), (-1.0, -3.0, 2.0)]
        }
        Family::Es => [(1.0, 2.0, -1.0), (-1.0, -3.0, 2.0), (-1.0, 5.0, -3.0)],
        Family::Flory => [(1.0, 1.0, 0.0), (-1.0, -2.0, 1.0), (-1.0, 3.0, -1.0)],
        Family::Riviera => {
            return Err(Error::UnsupportedFamily {
                family,
                op: "s_closed",
            })
        }
    })
}

pub fn support(family: Family) -> Result<SupportInterval> {
    let (lo, hi) = match family {
        Family::Predator | Family::Altruist => (1.0 / 2.0, 2.0 / 3.0),
        Family::Es => (3.0 / 5.0, 2.0 / 3.0),
        Family::Flory => (1.0 / 3.0, 1.0 / 2.0),
        Family::Riviera => {
            return Err(Error::UnsupportedFamily {
                family,
                op: "support",
            })
        }
    };
    Ok(SupportInterval { lo, hi })
}

pub fn s_closed(family: Family, rho: f64) -> Result<f64> {
    let terms = closed_terms(family)?;
    support(family)?.check(rho)?;
    Ok(terms
        .iter()
        .map(|&(sign, a, b)| {
            let t = a * rho + b;
            sign * t * t.ln()
        })
        .sum())
}

/// `dS/drho`; strictly decreasing on the support.
pub fn s_closed_derivative(family: Family, rho: f64) -> Result<f64> {
    let terms = closed_terms(family)?;
    support(family)?.check(rho)?;
    Ok(terms
        .iter()
        .map(|&(sign, a, b)| sign * a * ((a * rho + b).ln() + 1.0))
        .sum())
}

/// Density range reachable by the kernel method: the extreme ratios
/// `deg_x / deg_y` over the denominator's negative terms.
pub fn kl_support(den: &BiPoly) -> Result<SupportInterval> {
    let ratios: Vec<f64> = den
        .terms()
        .filter(|(_, dy, c)| *dy > 0 && c.sign() == num_bigint::Sign::Minus)
        .map(|(dx, dy, _)| dx as f64 / dy as f64)
        .collect();
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if ratios.is_empty() || lo >= hi {
        return Err(Error::InvalidDenominator(format!(
            "{den} does not span a density interval"
        )));
    }
    Ok(SupportInterval { lo, hi })
}

/// Smallest positive root of a univariate integer polynomial on `(0, 1)`.
fn positive_root(coeffs: &[num_bigint::BigInt]) -> Option<f64> {
    let f = |y: f64| -> f64 {
        coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * y + c.to_f64().unwrap_or(f64::NAN))
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    if f(lo) <= 0.0 || f(hi) >= 0.0 {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Root `y0` of `q(1, y)`; `-ln y0` is the entropy maximum.
pub fn equilibrium_root(den: &BiPoly) -> Result<f64> {
    positive_root(&specialise(den, Axis::Length))
        .ok_or_else(|| Error::InvalidDenominator(format!("{den} has no root of q(1, y) in (0, 1)")))
}

const KL_TOL: f64 = 1e-12;
const KL_STEP: f64 = 2e-3;

/// `q`, its first and second Euler derivatives, in log coordinates.
struct KlSystem {
    q: BiPoly,
    qx: BiPoly,
    qy: BiPoly,
    qxx: BiPoly,
    qxy: BiPoly,
    qyy: BiPoly,
}

impl KlSystem {
    fn new(den: &BiPoly) -> Self {
        let qx = den.theta_x();
        let qy = den.theta_y();
        KlSystem {
            q: den.clone(),
            qxx: qx.theta_x(),
            qxy: qx.theta_y(),
            qyy: qy.theta_y(),
            qx,
            qy,
        }
    }

    fn residual(&self, rho: f64, u: f64, v: f64) -> (f64, f64) {
        (
            self.q.eval_log(u, v),
            self.qx.eval_log(u, v) - rho * self.qy.eval_log(u, v),
        )
    }

    fn newton(&self, rho: f64, mut u: f64, mut v: f64) -> Option<(f64, f64)> {
        for _ in 0..60 {
            let (f1, f2) = self.residual(rho, u, v);
            if f1.abs().max(f2.abs()) < KL_TOL * 1e-2 {
                break;
            }
            let a = self.qx.eval_log(u, v);
            let b = self.qy.eval_log(u, v);
            let c = self.qxx.eval_log(u, v) - rho * self.qxy.eval_log(u, v);
            let d = self.qxy.eval_log(u, v) - rho * self.qyy.eval_log(u, v);
            let det = a * d - b * c;
            if !det.is_finite() || det == 0.0 {
                return None;
            }
            let du = (d * f1 - b * f2) / det;
            let dv = (a * f2 - c * f1) / det;
            u -= du;
            v -= dv;
            if !(u.is_finite() && v.is_finite()) {
                return None;
            }
            if du.abs().max(dv.abs()) < 1e-16 {
                break;
            }
        }
        let (f1, f2) = self.residual(rho, u, v);
        (f1.abs() < KL_TOL && f2.abs() < KL_TOL).then_some((u, v))
    }
}

/// Solves `q(x0, y0) = 0` and `x q_x = rho y q_y` for positive `x0`, `y0`.
///
/// Starts at the entropy maximum (`x0 = 1`) and follows the solution branch
/// in small density steps to `rho`.
pub fn kl_solve(den: &BiPoly, rho: f64) -> Result<ComplexityPoint> {
    kl_support(den)?.check(rho)?;
    let sys = KlSystem::new(den);
    let y_eq = equilibrium_root(den)?;
    let (mut u, mut v) = (0.0, y_eq.ln());
    let rho_eq = sys.qx.eval_log(u, v) / sys.qy.eval_log(u, v);
    let steps = ((rho - rho_eq).abs() / KL_STEP).ceil().max(1.0) as usize;
    for i in 1..=steps {
        let r = rho_eq + (rho - rho_eq) * i as f64 / steps as f64;
        match sys.newton(r, u, v) {
            Some((nu, nv)) => (u, v) = (nu, nv),
            None => {
                let (f1, f2) = sys.residual(r, u, v);
                return Err(Error::NoConvergence {
                    rho: r,
                    residual: f1.abs().max(f2.abs()),
                });
            }
        }
    }
    Ok(ComplexityPoint {
        rho,
        s: -rho * u - v,
        x0: Some(u.exp()),
        y0: Some(v.exp()),
        method: Method::Kl,
    })
}

/// Natural logarithm of a big integer to double precision.
pub fn ln_biguint(c: &BigUint) -> f64 {
    let bits = c.bits();
    if bits <= 64 {
        return c.to_f64().map_or(f64::NAN, f64::ln);
    }
    let shift = bits - 64;
    let top = (c >> shift).to_u64().expect("top 64 bits fit");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Occupancy used for density `rho` at length `n`, robust to `rho * n`
/// landing just below an integer.
pub fn occupancy_for(rho: f64, n: usize) -> usize {
    (rho * n as f64 + 1e-9).floor() as usize
}

/// `ln J(floor(rho n), n) / n`, or 0 when there are no such configurations.
pub fn s_empirical(family: Family, rho: f64, n: usize) -> Result<f64> {
    let row = RecurrenceRows::for_family(family)?
        .nth(n)
        .expect("recurrence rows are unbounded")?;
    Ok(entropy_from_row(&row, rho, n))
}

fn entropy_from_row(row: &[BigUint], rho: f64, n: usize) -> f64 {
    match row.get(occupancy_for(rho, n)) {
        Some(c) if c.bits() > 0 && n > 0 => ln_biguint(c) / n as f64,
        _ => 0.0,
    }
}

/// Empirical estimates at several densities from one length-`n` row.
pub fn s_empirical_many(family: Family, rhos: &[f64], n: usize) -> Result<Vec<f64>> {
    let row = RecurrenceRows::for_family(family)?
        .nth(n)
        .expect("recurrence rows are unbounded")?;
    Ok(rhos.iter().map(|&r| entropy_from_row(&row, r, n)).collect())
}

/// `(rho*, S(rho*))`: maximiser of the closed-form entropy, by bisection on
/// the derivative.
pub fn equilibrium_density(family: Family) -> Result<(f64, f64)> {
    let sup = support(family)?;
    let eps = 1e-15;
    let (mut lo, mut hi) = (sup.lo + eps, sup.hi - eps);
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if s_closed_derivative(family, mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let rho = 0.5 * (lo + hi);
    Ok((rho, s_closed(family, rho)?))
}

/// Exponential growth rate of the family's length totals, `1 / y0` with `y0`
/// the smallest positive root of the denominator at `x = 1`.
pub fn growth_rate(family: Family) -> Result<f64> {
    Ok(1.0 / equilibrium_root(family_gf(family)?.denominator())?)
}

/// Evaluates `method` at each density; independent points run under `exec`.
pub fn complexity_curve(
    family: Family,
    method: Method,
    rhos: &[f64],
    exec: Exec,
) -> Result<Vec<ComplexityPoint>> {
    let plain = |rho: f64, s: f64| ComplexityPoint {
        rho,
        s,
        x0: None,
        y0: None,
        method,
    };
    match method {
        Method::Closed => rhos
            .iter()
            .map(|&r| Ok(plain(r, s_closed(family, r)?)))
            .collect(),
        Method::Kl => {
            let den = family_gf(family)?.denominator().clone();
            exec.map(rhos.to_vec(), |r| kl_solve(&den, r))
                .into_iter()
                .collect()
        }
        Method::Empirical(n) => Ok(rhos
            .iter()
            .zip(s_empirical_many(family, rhos, n)?)
            .map(|(&r, s)| plain(r, s))
            .collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfcount::gf_closed;
    use proptest::prelude::*;

    fn den(family: Family) -> BiPoly {
        family_gf(family).unwrap().denominator().clone()
    }

    #[test]
    fn closed_examples() {
        assert!((s_closed(Family::Predator, 0.6).unwrap() - 0.277259).abs() < 1e-6);
        assert!((s_closed(Family::Es, 0.65).unwrap() - 0.135169).abs() < 1e-6);
        assert!(matches!(
            s_closed(Family::Es, 0.6),
            Err(Error::OutOfSupport { .. })
        ));
        assert!(s_closed(Family::Riviera, 0.6).is_err());
    }

    #[test]
    fn kl_worked_point() {
        let p = kl_solve(&den(Family::Predator), 0.6).unwrap();
        assert!((p.x0.unwrap() - 2.0).abs() < 1e-10);
        assert!((p.y0.unwrap() - 0.5).abs() < 1e-10);
        assert!((p.s - 0.277259).abs() < 1e-6);
    }

    #[test]
    fn kl_supports() {
        for family in [
            Family::Predator,
            Family::Altruist,
            Family::Es,
            Family::Flory,
        ] {
            let k = kl_support(&den(family)).unwrap();
            let c = support(family).unwrap();
            assert!(
                (k.lo - c.lo).abs() < 1e-15 && (k.hi - c.hi).abs() < 1e-15,
                "{family}"
            );
        }
        assert!(kl_solve(&den(Family::Es), 0.55).is_err());
    }

    #[test]
    fn kl_matches_closed_on_grids() {
        for family in [
            Family::Predator,
            Family::Altruist,
            Family::Es,
            Family::Flory,
        ] {
            let grid = support(family).unwrap().interior_grid(50);
            let kl = complexity_curve(family, Method::Kl, &grid, Exec::default()).unwrap();
            for p in kl {
                let c = s_closed(family, p.rho).unwrap();
                assert!(
                    (p.s - c).abs() < 1e-10,
                    "{family} at {}: {} vs {c}",
                    p.rho,
                    p.s
                );
            }
        }
    }

    #[test]
    fn equilibrium_point() {
        let (rho, s) = equilibrium_density(Family::Predator).unwrap();
        let plastic: f64 = 1.324_717_957_244_746;
        // x0 = 1 on the kernel curve gives rho = (1 + 2 y0) / (2 + 3 y0)
        let y0 = 1.0 / plastic;
        assert!((rho - (1.0 + 2.0 * y0) / (2.0 + 3.0 * y0)).abs() < 1e-9);
        assert!((rho - 0.588553).abs() < 1e-4);
        assert!((s - plastic.ln()).abs() < 1e-9);
        let p = kl_solve(&den(Family::Predator), rho).unwrap();
        assert!((p.x0.unwrap() - 1.0).abs() < 1e-8);
        assert!((growth_rate(Family::Predator).unwrap() - plastic).abs() < 1e-12);
    }

    #[test]
    fn empirical_examples() {
        assert_eq!(s_empirical(Family::Es, 0.5, 500).unwrap(), 0.0);
        let c = s_closed(Family::Predator, 0.6).unwrap();
        let errs: Vec<f64> = [250, 500, 1000]
            .iter()
            .map(|&n| (s_empirical(Family::Predator, 0.6, n).unwrap() - c).abs())
            .collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    }

    #[test]
    fn big_logarithms() {
        let c = BigUint::from(3u32).pow(1000);
        assert!((ln_biguint(&c) - 1000.0 * 3f64.ln()).abs() < 1e-9);
        assert_eq!(ln_biguint(&BigUint::from(1u32)), 0.0);
    }

    #[test]
    fn occupancy_rounding() {
        assert_eq!(occupancy_for(0.6, 2000), 1200);
        assert_eq!(occupancy_for(0.7, 10), 7);
    }

    #[test]
    fn altruist_has_predator_denominator_root() {
        let a = equilibrium_root(gf_closed(Family::Altruist).unwrap().denominator()).unwrap();
        let p = equilibrium_root(gf_closed(Family::Predator).unwrap().denominator()).unwrap();
        assert!((a - p).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn altruist_equals_predator(rho in 0.5001f64..0.6666) {
            prop_assert_eq!(
                s_closed(Family::Altruist, rho).unwrap(),
                s_closed(Family::Predator, rho).unwrap()
            );
        }

        #[test]
        fn flory_complement(rho in 0.5001f64..0.6666) {
            let p = s_closed(Family::Predator, rho).unwrap();
            let f = s_closed(Family::Flory, 1.0 - rho).unwrap();
            prop_assert!((p - f).abs() < 1e-12);
        }

        #[test]
        fn nonnegative_inside_support(t in 0.0001f64..0.9999) {
            for family in [Family::Predator, Family::Es, Family::Flory] {
                let s = support(family).unwrap();
                let rho = s.lo + t * (s.hi - s.lo);
                prop_assert!(s_closed(family, rho).unwrap() >= -1e-15);
            }
        }
    }

    #[test]
    fn vanishes_at_endpoints() {
        for family in [
            Family::Predator,
            Family::Altruist,
            Family::Es,
            Family::Flory,
        ] {
            let s = support(family).unwrap();
            assert!(s_closed(family, s.lo + 1e-6).unwrap() < 1e-4);
            assert!(s_closed(family, s.hi - 1e-6).unwrap() < 1e-4);
        }
    }
}
