use super::eval::{eval_direct, qpow, GroupPoint};
use crate::character::{chi_twisted, integrate_unit_complex};
use crate::error::{domain, Result};
use crate::ff::{monic_up_to, Laurent, Poly};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Mutex;

/// Tolerance used for the point evaluations behind the oracles.
pub const ORACLE_TOL: f64 = 1e-13;

/// Number of nonzero `lambda Q` per monic `Q`: the factor by which the sum of
/// `|c|^2` over all nonzero characters exceeds the sum over monic ones. Fixed
/// after the Parseval calibration.
pub fn kappa(q: u32) -> f64 {
    (q - 1) as f64
}

/// `E(n, x)` memoized on the fractional digits that it depends on.
struct HeightSlice<'a> {
    n: i64,
    s: Complex64,
    a: &'a Poly,
    cache: Mutex<HashMap<Vec<u32>, Complex64>>,
}

impl<'a> HeightSlice<'a> {
    fn new(n: i64, s: Complex64, a: &'a Poly) -> Self {
        HeightSlice { n, s, a, cache: Mutex::new(HashMap::new()) }
    }

    fn value(&self, x: &Laurent) -> Result<Complex64> {
        let l = (-self.n - 1).max(0) as usize;
        let g = GroupPoint::new(self.n, &x.fractional_part())?;
        let key = g.frac_pattern(l);
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return Ok(*v);
        }
        let v = eval_direct(&g, self.s, self.a, ORACLE_TOL)?.value;
        self.cache.lock().unwrap().insert(key, v);
        Ok(v)
    }
}

fn min_depth(n: i64, qp: &Poly) -> usize {
    (qp.deg_i64().max(0) + (-n).max(0) + 2) as usize
}

/// `integral of E(n, x) conj(chi_Q(x)) dx` over `k_inf / F_q[T]`, as an exact
/// average over `q^depth` digit patterns. Works for any `Q`, monic or not.
pub fn fourier_extract(n: i64, qp: &Poly, s: Complex64, a: &Poly, depth: usize) -> Result<Complex64> {
    if depth < min_depth(n, qp) {
        return domain(format!("depth {depth} too small for n = {n}, Q = {qp}"));
    }
    let slice = HeightSlice::new(n, s, a);
    integrate_unit_complex(a.q(), depth, |x| {
        let e = slice.value(x)?;
        Ok(e * chi_twisted(qp, x)?.to_complex().conj())
    })
}

/// Parseval comparison at one height.
#[derive(Clone, Debug, Serialize)]
pub struct ParsevalReport {
    pub n: i64,
    /// `integral of |E(n, x)|^2 dx`.
    pub mean_square: f64,
    pub constant_term_sq: f64,
    /// Sum of `|c(n, Q)|^2` over monic `Q != 0`.
    pub monic_sum: f64,
    /// Sum of `|c(n, Q)|^2` over all `Q != 0`.
    pub all_sum: f64,
    /// `(mean_square - constant_term_sq) / monic_sum`; absent when no `Q` contributes.
    pub kappa_estimate: Option<f64>,
    pub kappa: f64,
    /// `|mean_square - constant_term_sq - kappa * monic_sum|`.
    pub residual: f64,
}

/// Compares `integral |E|^2` with the extracted coefficients. A function of
/// `E(n, .)` sees only characters with `deg Q <= -n - 2`.
pub fn parseval_check(n: i64, s: Complex64, a: &Poly, depth: usize) -> Result<ParsevalReport> {
    let q = a.q();
    let need = (-n - 1).max(1) as usize;
    if depth < need {
        return domain(format!("depth {depth} too small for n = {n}"));
    }
    let slice = HeightSlice::new(n, s, a);
    let mean_square = integrate_unit_complex(q, depth, |x| Ok(Complex64::new(slice.value(x)?.norm_sqr(), 0.0)))?.re;
    let ext = |qp: &Poly| fourier_extract(n, qp, s, a, depth.max(min_depth(n, qp)));
    let constant_term_sq = ext(&Poly::zero(q))?.norm_sqr();
    let mut monic_sum = 0.0;
    let mut all_sum = 0.0;
    if n <= -2 {
        for qp in monic_up_to(q, (-n - 2) as usize) {
            let v = ext(&qp)?.norm_sqr();
            monic_sum += v;
            all_sum += v;
            for lambda in 2..q {
                all_sum += ext(&qp.scale(lambda))?.norm_sqr();
            }
        }
    }
    let kappa_estimate = (monic_sum > 0.0).then(|| (mean_square - constant_term_sq) / monic_sum);
    let k = kappa(q);
    let residual = (mean_square - constant_term_sq - k * monic_sum).abs();
    Ok(ParsevalReport { n, mean_square, constant_term_sq, monic_sum, all_sum, kappa_estimate, kappa: k, residual })
}

/// Check of the Hecke relation `sum over neighbors E = (q^s + q^(1-s)) E`.
#[derive(Clone, Debug, Serialize)]
pub struct AdjacencyReport {
    pub vertex: String,
    pub s_re: f64,
    pub s_im: f64,
    pub neighbor_sum: Complex64,
    pub eigenvalue: Complex64,
    pub value: Complex64,
    pub relative_residual: f64,
}

pub fn adjacency_eigen_check(g: &GroupPoint, s: Complex64, a: &Poly) -> Result<AdjacencyReport> {
    let q = g.q();
    let value = eval_direct(g, s, a, ORACLE_TOL)?.value;
    let mut neighbor_sum = Complex64::new(0.0, 0.0);
    for nb in g.neighbors() {
        neighbor_sum += eval_direct(&nb, s, a, ORACLE_TOL)?.value;
    }
    let eigenvalue = qpow(q, s) + qpow(q, Complex64::new(1.0, 0.0) - s);
    let rhs = eigenvalue * value;
    let relative_residual = (neighbor_sum - rhs).norm() / rhs.norm().max(f64::MIN_POSITIVE);
    Ok(AdjacencyReport {
        vertex: g.to_string(),
        s_re: s.re,
        s_im: s.im,
        neighbor_sum,
        eigenvalue,
        value,
        relative_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::super::coeff::coeff_unfolded;
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn extraction_matches_unfolded_coefficients() {
        let t = Poly::t(5);
        for (n, qs) in [(0, "0"), (-1, "0"), (-2, "0"), (-2, "1"), (-3, "T+2"), (-1, "1")] {
            let qp = Poly::parse(5, qs).unwrap();
            let ext = fourier_extract(n, &qp, c(2.0), &t, min_depth(n, &qp)).unwrap();
            let cl = coeff_unfolded(n, &qp, c(2.0), &t).unwrap();
            assert!((ext - cl).norm() <= 1e-9 * cl.norm().max(1e-3), "n={n} Q={qs}: {ext} vs {cl}");
        }
    }

    #[test]
    fn parseval_kappa() {
        let t = Poly::t(5);
        let r2 = parseval_check(-2, c(2.0), &t, 2).unwrap();
        let r3 = parseval_check(-3, c(2.0), &t, 3).unwrap();
        assert!((r2.kappa_estimate.unwrap() - 4.0).abs() < 1e-8);
        assert!((r3.kappa_estimate.unwrap() - 4.0).abs() < 1e-8);
        let r1 = parseval_check(-1, c(2.0), &t, 1).unwrap();
        assert!(r1.kappa_estimate.is_none());
        assert!(r1.residual < 1e-12);
    }

    #[test]
    fn hecke_relation() {
        let t = Poly::t(5);
        let g = GroupPoint::parse(5, "n=0,x=0").unwrap();
        let r = adjacency_eigen_check(&g, c(2.0), &t).unwrap();
        assert!(r.relative_residual < 1e-10, "{r:?}");
    }
}
