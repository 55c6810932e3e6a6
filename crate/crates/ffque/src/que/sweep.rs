use super::weight::TestWeight;
use crate::eisenstein::{kappa, CoeffSource};
use crate::error::{domain, Error, Result};
use crate::ff::{check_q, enumerate_polys, is_irreducible, monic_up_to, Poly};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

/// Rejects `t` with `q^(2it) = 1`, which includes `t = 0`.
pub fn check_t(q: u32, t: f64) -> Result<()> {
    let lq = (q as f64).ln();
    let phase = (t * lq / std::f64::consts::PI).rem_euclid(1.0);
    if !t.is_finite() || phase < 1e-12 || 1.0 - phase < 1e-12 {
        return domain(format!("t must be a nonzero real with q^(2it) != 1 (got t = {t})"));
    }
    Ok(())
}

/// The two pieces of the Eisenstein inner product at `s = 1/2 + it`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct IValues {
    pub i1: f64,
    pub i2: f64,
    pub i: f64,
}

/// `sum_n psi(q^n) [ |c(n,0)|^2 + kappa sum over monic Q != 0 of |c(n,Q)|^2 ]`,
/// the `Q`-range cut off by the vanishing rule of the chosen coefficient source.
pub fn compute_i(a: &Poly, t: f64, psi: &TestWeight, kappa: f64, source: CoeffSource) -> Result<IValues> {
    let q = a.q();
    check_t(q, t)?;
    let s = Complex64::new(0.5, t);
    let deg_a = a.degree().unwrap();
    let mut i1 = 0.0;
    let mut i2 = 0.0;
    for (n, w) in psi.values() {
        i1 += w * source.eval(n, &Poly::zero(q), s, a)?.norm_sqr();
        let top = source.support_top(deg_a, &Poly::one(q)) - n;
        if top < 0 {
            continue;
        }
        let qs: Vec<Poly> = monic_up_to(q, top as usize).collect();
        let part: Result<Vec<f64>> = qs.par_iter().map(|qp| Ok(source.eval(n, qp, s, a)?.norm_sqr())).collect();
        i2 += w * kappa * part?.iter().sum::<f64>();
    }
    Ok(IValues { i1, i2, i: i1 + i2 })
}

/// `(1 + 1/q) / (2 log q)`.
pub fn target_slope(q: u32) -> f64 {
    (1.0 + 1.0 / q as f64) / (2.0 * (q as f64).ln())
}

/// Leading-term prediction and the two forms of `G(0)` behind it.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Prediction {
    pub value: f64,
    pub g0_three_term: f64,
    pub g0_closed: f64,
}

/// The bracketed three-term form of `G(0)`.
pub fn g0_three_term(q: u32, abs_a: f64, t: f64) -> f64 {
    let qf = q as f64;
    let e = |w: Complex64| (w * qf.ln()).exp();
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let front = abs_a * (1.0 - 1.0 / qf) / (qf * qf * (one - e(i * 2.0 * t)).norm_sqr());
    let bracket = 2.0 / (1.0 - 1.0 / qf) - e(-i * 2.0 * t) / (one - e(-one - i * 2.0 * t))
        - e(i * 2.0 * t) / (one - e(-one + i * 2.0 * t));
    (front * bracket).re
}

/// `|A| (1 + 1/q) / (q^2 |1 - q^(-1-2it)|^2)`.
pub fn g0_closed(q: u32, abs_a: f64, t: f64) -> f64 {
    let qf = q as f64;
    let w = Complex64::new(-1.0, -2.0 * t) * qf.ln();
    abs_a * (1.0 + 1.0 / qf) / (qf * qf * (Complex64::new(1.0, 0.0) - w.exp()).norm_sqr())
}

/// `target_slope * log|A| * H(0) / (|A| + 1)`.
pub fn predicted_leading(a: &Poly, t: f64, psi: &TestWeight) -> Result<Prediction> {
    let q = a.q();
    check_t(q, t)?;
    let abs_a = (q as f64).powi(a.degree().unwrap() as i32);
    let h0 = psi.mass().to_f64().unwrap_or(f64::NAN);
    let value = target_slope(q) * abs_a.ln() * h0 / (abs_a + 1.0);
    Ok(Prediction { value, g0_three_term: g0_three_term(q, abs_a, t), g0_closed: g0_closed(q, abs_a, t) })
}

/// One level of a sweep; the CSV columns in order.
#[derive(Clone, Debug, Serialize)]
pub struct LevelRecord {
    pub q: u32,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "deg_A")]
    pub deg_a: usize,
    #[serde(rename = "abs_A")]
    pub abs_a: f64,
    pub m: u64,
    pub t: f64,
    #[serde(rename = "H0")]
    pub h0: f64,
    #[serde(rename = "I1")]
    pub i1: f64,
    #[serde(rename = "I2")]
    pub i2: f64,
    #[serde(rename = "I")]
    pub i: f64,
    pub predicted_leading: f64,
    #[serde(rename = "scaled_I")]
    pub scaled_i: f64,
    pub residual: f64,
}

/// A full sweep with its regression of `(m / H(0)) I` on `log|A|`.
#[derive(Clone, Debug, Serialize)]
pub struct QueRun {
    pub q: u32,
    pub t: f64,
    pub psi: String,
    pub kappa: f64,
    pub source: CoeffSource,
    pub records: Vec<LevelRecord>,
    /// `None` when fewer than two levels were swept.
    pub fitted_slope: Option<f64>,
    pub intercept: Option<f64>,
    pub target_slope: f64,
    pub max_residual: Option<f64>,
}

impl QueRun {
    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({
            "fitted_slope": self.fitted_slope,
            "target_slope": self.target_slope,
            "max_residual": self.max_residual,
            "kappa": self.kappa,
        })
    }

    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        for r in &self.records {
            wr.serialize(r).map_err(|e| Error::Resource(e.to_string()))?;
        }
        wr.flush().map_err(|e| Error::Resource(e.to_string()))?;
        Ok(())
    }

    /// Relative deviation of the fitted slope from the target.
    pub fn slope_error(&self) -> Option<f64> {
        self.fitted_slope.map(|s| (s - self.target_slope).abs() / self.target_slope)
    }
}

/// First monic irreducible of degree `d` in enumeration order.
pub fn first_irreducible(q: u32, d: usize) -> Result<Poly> {
    enumerate_polys(q, d, true)
        .find(is_irreducible)
        .ok_or_else(|| Error::Domain(format!("no irreducible of degree {d}")))
}

/// Least-squares line through `(x, y)`; `None` for fewer than two distinct x.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Option<(f64, f64)> {
    let n = x.len() as f64;
    if x.len() < 2 {
        return None;
    }
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

pub fn que_sweep(
    q: u32,
    t: f64,
    degrees: std::ops::RangeInclusive<usize>,
    psi: &TestWeight,
    source: CoeffSource,
) -> Result<QueRun> {
    check_q(q)?;
    check_t(q, t)?;
    let k = kappa(q);
    let h0 = psi.mass().to_f64().unwrap_or(f64::NAN);
    if h0 == 0.0 {
        return domain("the weight has zero mass H(0)");
    }
    let levels: Vec<Poly> = degrees.map(|d| first_irreducible(q, d)).collect::<Result<_>>()?;
    let mut records = levels
        .par_iter()
        .map(|a| {
            let deg_a = a.degree().unwrap();
            let abs_a = (q as f64).powi(deg_a as i32);
            let m = (q as u64).pow(deg_a as u32) + 1;
            let iv = compute_i(a, t, psi, k, source)?;
            let pred = predicted_leading(a, t, psi)?;
            Ok(LevelRecord {
                q,
                a: a.to_string(),
                deg_a,
                abs_a,
                m,
                t,
                h0,
                i1: iv.i1,
                i2: iv.i2,
                i: iv.i,
                predicted_leading: pred.value,
                scaled_i: m as f64 / h0 * iv.i,
                residual: f64::NAN,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let x: Vec<f64> = records.iter().map(|r| r.abs_a.ln()).collect();
    let y: Vec<f64> = records.iter().map(|r| r.scaled_i).collect();
    let fit = linear_fit(&x, &y);
    let mut max_residual = None;
    if let Some((slope, icpt)) = fit {
        let mut mr: f64 = 0.0;
        for (r, xi) in records.iter_mut().zip(&x) {
            r.residual = r.scaled_i - slope * xi - icpt;
            mr = mr.max(r.residual.abs());
        }
        max_residual = Some(mr);
    }
    Ok(QueRun {
        q,
        t,
        psi: psi.to_string(),
        kappa: k,
        source,
        records,
        fitted_slope: fit.map(|f| f.0),
        intercept: fit.map(|f| f.1),
        target_slope: target_slope(q),
        max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singular_t() {
        assert!(check_t(5, 0.0).is_err());
        assert!(check_t(5, std::f64::consts::PI / 5f64.ln()).is_err());
        assert!(check_t(5, 1.0).is_ok());
    }

    #[test]
    fn g0_forms_agree() {
        for t in [0.3, 1.0, 2.7] {
            let a = g0_three_term(5, 25.0, t);
            let b = g0_closed(5, 25.0, t);
            assert!((a - b).abs() < 1e-10 * b);
        }
    }

    #[test]
    fn prediction_composes() {
        let p = predicted_leading(&Poly::t(5), 1.0, &TestWeight::delta(0)).unwrap();
        assert!((target_slope(5) - 0.37280).abs() < 5e-5);
        assert!((p.value - target_slope(5) * 5f64.ln() / 6.0).abs() < 1e-14);
    }

    #[test]
    fn level_t_q_sum_is_empty_at_height_zero() {
        let a = Poly::t(5);
        let iv = compute_i(&a, 1.0, &TestWeight::delta(0), 4.0, CoeffSource::Closed).unwrap();
        assert_eq!(iv.i2, 0.0);
        let c0 = crate::eisenstein::coeff_closed(0, &Poly::zero(5), Complex64::new(0.5, 1.0), &a).unwrap();
        assert!((iv.i - c0.norm_sqr()).abs() < 1e-15);
    }

    #[test]
    fn single_level_fit_is_undefined() {
        let run = que_sweep(5, 1.0, 2..=2, &TestWeight::delta(0), CoeffSource::Closed).unwrap();
        assert!(run.fitted_slope.is_none());
    }
}
