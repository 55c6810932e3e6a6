use super::eval::qpow;
use crate::arith::sigma;
use crate::error::{domain, Result};
use crate::ff::{is_irreducible, monic_up_to, Poly};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;

const POLE_EPS: f64 = 1e-12;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn check_args(qp: &Poly, s: Complex64, a: &Poly) -> Result<usize> {
    if !a.is_monic() || !is_irreducible(a) {
        return domain(format!("level must be monic irreducible (got {a})"));
    }
    if !qp.is_zero() && !qp.is_monic() {
        return domain(format!("Q must be monic or 0 (got {qp})"));
    }
    let deg_a = a.degree().unwrap();
    if (one() - qpow(a.q(), -s * (2 * deg_a) as f64)).norm() < POLE_EPS {
        return domain(format!("q^(2as) = 1 at s = {s}: pole of the coefficient formulas"));
    }
    Ok(deg_a)
}

/// `sigma_{1-2s}(Q) - sigma_{1-2s}(Q A^-alpha) / (1 - q^(-2as))`.
fn sigma_difference(qp: &Poly, s: Complex64, a: &Poly) -> Result<Complex64> {
    let nu = one() - s * 2.0;
    let alpha = qp.valuation(a)?;
    let cofactor = qp.div_exact(&a.pow(alpha))?;
    let deg_a = a.degree().unwrap() as f64;
    Ok(sigma(qp, nu)? - sigma(&cofactor, nu)? / (one() - qpow(a.q(), -s * 2.0 * deg_a)))
}

/// Highest height `n` at which the closed formulas allow `c(n, Q, s) != 0`.
pub fn closed_support_top(deg_a: usize, qp: &Poly) -> i64 {
    deg_a as i64 - 2 - qp.deg_i64()
}

/// The stated closed Fourier-Whittaker coefficients for level A:
///
/// `c(n, 0, s) = q^(ns) + q^(n(1-s) + 1 - 2as) / (1 - q^(-2as))`, and for monic
/// `Q` with `n <= a - 2 - deg Q`,
/// `c(n, Q, s) = q^(n(1-s)+1-a) (1 - q^(-2s)) (1 - q^((a-1-deg Q-n)(1-2s))) (sigma difference)`,
/// zero for larger `n`.
pub fn coeff_closed(n: i64, qp: &Poly, s: Complex64, a: &Poly) -> Result<Complex64> {
    let deg_a = check_args(qp, s, a)?;
    let q = a.q();
    let af = deg_a as f64;
    let nf = n as f64;
    if qp.is_zero() {
        let top = qpow(q, nf * (one() - s) + 1.0 - s * 2.0 * af);
        return Ok(qpow(q, s * nf) + top / (one() - qpow(q, -s * 2.0 * af)));
    }
    if n > closed_support_top(deg_a, qp) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let e = qp.deg_i64() as f64;
    Ok(qpow(q, nf * (one() - s) + 1.0 - af)
        * (one() - qpow(q, -s * 2.0))
        * (one() - qpow(q, (one() - s * 2.0) * (af - 1.0 - e - nf)))
        * sigma_difference(qp, s, a)?)
}

/// Coefficients obtained by unfolding the coset sum directly:
///
/// `c(n, 0, s) = q^(ns) + q^(n(1-s)+1) (1-q^(-2s)) (1-q^(-a)) q^(a(1-2s)) / ((1-q^(-2as)) (1-q^(2-2s)))`,
/// and for monic `Q != 0` with `n <= -2 - deg Q`,
/// `c(n, Q, s) = q^(n(1-s)+1) (1 - q^(-2s)) (1 - q^((-1-deg Q-n)(1-2s))) (sigma difference)`,
/// zero otherwise (a character of conductor `deg Q + 1` averages to zero on
/// balls of radius `q^n` once `n > -2 - deg Q`).
pub fn coeff_unfolded(n: i64, qp: &Poly, s: Complex64, a: &Poly) -> Result<Complex64> {
    let deg_a = check_args(qp, s, a)?;
    let q = a.q();
    let af = deg_a as f64;
    let nf = n as f64;
    let lead = qpow(q, nf * (one() - s) + 1.0) * (one() - qpow(q, -s * 2.0));
    if qp.is_zero() {
        let num = (1.0 - (q as f64).powf(-af)) * qpow(q, (one() - s * 2.0) * af);
        let den = (one() - qpow(q, -s * 2.0 * af)) * (one() - qpow(q, one() * 2.0 - s * 2.0));
        return Ok(qpow(q, s * nf) + lead * num / den);
    }
    let e = qp.deg_i64();
    if n > -2 - e {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(lead * (one() - qpow(q, (one() - s * 2.0) * (-1 - e - n) as f64)) * sigma_difference(qp, s, a)?)
}

/// Which coefficient formulas feed a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoeffSource {
    Closed,
    Unfolded,
}

impl CoeffSource {
    pub fn eval(self, n: i64, qp: &Poly, s: Complex64, a: &Poly) -> Result<Complex64> {
        match self {
            CoeffSource::Closed => coeff_closed(n, qp, s, a),
            CoeffSource::Unfolded => coeff_unfolded(n, qp, s, a),
        }
    }

    /// Highest height with possibly nonzero `Q`-coefficients.
    pub fn support_top(self, deg_a: usize, qp: &Poly) -> i64 {
        match self {
            CoeffSource::Closed => closed_support_top(deg_a, qp),
            CoeffSource::Unfolded => -2 - qp.deg_i64(),
        }
    }
}

/// Coefficients `c(n, Q, s)` for a fixed level and spectral point.
#[derive(Clone, Debug)]
pub struct EisCoeffTable {
    pub a: Poly,
    pub s: Complex64,
    pub source: CoeffSource,
    pub entries: BTreeMap<(i64, Poly), Complex64>,
}

impl EisCoeffTable {
    /// All `(n, Q)` with `n` in `n_range` and `Q = 0` or monic of degree at most
    /// `max_deg_q`; entries beyond the support are stored as exact zeros.
    pub fn build(
        a: &Poly,
        s: Complex64,
        n_range: std::ops::RangeInclusive<i64>,
        max_deg_q: usize,
        source: CoeffSource,
    ) -> Result<EisCoeffTable> {
        let q = a.q();
        let mut entries = BTreeMap::new();
        let qs: Vec<Poly> = std::iter::once(Poly::zero(q)).chain(monic_up_to(q, max_deg_q)).collect();
        for n in n_range {
            for qp in &qs {
                entries.insert((n, qp.clone()), source.eval(n, qp, s, a)?);
            }
        }
        Ok(EisCoeffTable { a: a.clone(), s, source, entries })
    }

    pub fn deg_a(&self) -> usize {
        self.a.degree().unwrap()
    }

    pub fn get(&self, n: i64, qp: &Poly) -> Option<Complex64> {
        self.entries.get(&(n, qp.clone())).copied()
    }

    /// Every entry past the support is exactly zero.
    pub fn vanishing_rule_holds(&self) -> bool {
        let a = self.deg_a();
        self.entries.iter().all(|((n, qp), v)| {
            qp.is_zero() || *n <= self.source.support_top(a, qp) || (v.re == 0.0 && v.im == 0.0)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn closed_constant_term_example() {
        let v = coeff_closed(0, &Poly::zero(5), c(2.0), &Poly::t(5)).unwrap();
        assert!((v.re - 629.0 / 624.0).abs() < 1e-12);
    }

    #[test]
    fn closed_vanishing_and_boundary() {
        let t = Poly::t(5);
        assert_eq!(coeff_closed(0, &Poly::one(5), c(2.0), &t).unwrap(), c(0.0));
        let a2 = Poly::parse(5, "T^2+2").unwrap();
        let v = coeff_closed(0, &Poly::one(5), c(2.0), &a2).unwrap();
        assert!(v.norm().is_finite() && v.norm() > 0.0);
    }

    #[test]
    fn pole_guard() {
        let s = Complex64::new(0.0, std::f64::consts::PI / (5f64).ln());
        assert!(coeff_closed(0, &Poly::zero(5), s, &Poly::t(5)).is_err());
    }

    #[test]
    fn table_vanishing() {
        let t = EisCoeffTable::build(&Poly::t(5), c(2.0), -3..=1, 1, CoeffSource::Closed).unwrap();
        assert!(t.vanishing_rule_holds());
        let u = EisCoeffTable::build(&Poly::t(5), c(2.0), -3..=1, 1, CoeffSource::Unfolded).unwrap();
        assert!(u.vanishing_rule_holds());
    }
}
