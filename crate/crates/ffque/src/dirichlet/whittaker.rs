//! The spherical Whittaker function on the tree and the geometric n-sums in
//! the cuspidal contribution.

use crate::error::{domain, Result};
use num_complex::Complex64;
use serde::Serialize;

fn qpow(q: u32, z: Complex64) -> Complex64 {
    (z * (q as f64).ln()).exp()
}

/// q^(it) - q^(-it), rejecting t on the lattice (pi / log q) Z.
fn kernel_denominator(q: u32, t: f64) -> Result<Complex64> {
    let it = Complex64::new(0.0, t);
    let d = qpow(q, it) - qpow(q, -it);
    if d.norm() < 1e-12 {
        return domain(format!("t = {t} lies on the excluded lattice (pi / log {q}) Z where q^(2it) = 1"));
    }
    Ok(d)
}

/// W(beta) = (q^(it(beta+1)) - q^(-it(beta+1))) / (q^(it) - q^(-it)) for beta >= 0, else 0.
pub fn whittaker(q: u32, t: f64, beta: i64) -> Result<Complex64> {
    let d = kernel_denominator(q, t)?;
    if beta < 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let it = Complex64::new(0.0, t * (beta + 1) as f64);
    Ok((qpow(q, it) - qpow(q, -it)) / d)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SumEvaluation {
    pub closed: [f64; 2],
    pub direct: [f64; 2],
    pub tail_bound: f64,
    pub abs_err: f64,
    /// Value obtained by summing the geometric series by hand from the summand.
    pub resummed: [f64; 2],
}

impl SumEvaluation {
    fn new(closed: Complex64, direct: Complex64, tail: f64, resummed: Complex64) -> Self {
        SumEvaluation {
            closed: [closed.re, closed.im],
            direct: [direct.re, direct.im],
            tail_bound: tail,
            abs_err: (closed - direct).norm(),
            resummed: [resummed.re, resummed.im],
        }
    }

    pub fn agrees(&self, tol: f64) -> bool {
        self.abs_err <= tol + self.tail_bound
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct GeometricSums {
    pub a: i64,
    pub deg_q: i64,
    pub cutoff: i64,
    pub first: SumEvaluation,
    pub second: SumEvaluation,
}

/// Both n-sums: the first over n <= a-2-deg Q of
/// q^n (q^(-it m) - q^(it m)) / (q^(it) - q^(-it)) with m = n + 1 + deg Q, and
/// the second over n <= -2-deg Q of q^(2ns + (1-2s)(a-1-deg Q)) times the same
/// ratio. Each is summed directly down to `cutoff` and compared with its
/// stated closed form.
pub fn geometric_n_sums(q: u32, a: i64, deg_q: i64, s: Complex64, t: f64, cutoff: i64) -> Result<GeometricSums> {
    let d = kernel_denominator(q, t)?;
    if s.re <= 0.0 {
        return domain("the second n-sum diverges for Re(s) <= 0");
    }
    let qf = q as f64;
    let it = Complex64::new(0.0, t);
    let ratio = |m: i64| (qpow(q, -it * m as f64) - qpow(q, it * m as f64)) / d;
    let bound_ratio = 2.0 / d.norm();

    let top1 = a - 2 - deg_q;
    let mut direct1 = Complex64::new(0.0, 0.0);
    for n in cutoff.min(top1)..=top1 {
        direct1 += qf.powi(n as i32) * ratio(n + 1 + deg_q);
    }
    let low1 = cutoff.min(top1);
    let tail1 = bound_ratio * qf.powi(low1 as i32) / (qf - 1.0);
    let closed1 = qf.powi(top1 as i32) / d
        * (qpow(q, -it * (a - 1) as f64) / (1.0 - qpow(q, -(1.0 - it)))
            - qpow(q, it * (a - 1) as f64) / (1.0 - qpow(q, -(1.0 + it))));
    let resum1 = {
        let r1 = qpow(q, -(1.0 - it));
        let r2 = qpow(q, -(1.0 + it));
        qf.powi((-1 - deg_q) as i32) / d
            * (qpow(q, (1.0 - it) * (a - 1) as f64) / (1.0 - r1) - qpow(q, (1.0 + it) * (a - 1) as f64) / (1.0 - r2))
    };

    let top2 = -2 - deg_q;
    let pref = qpow(q, (1.0 - 2.0 * s) * (a - 1 - deg_q) as f64);
    let mut direct2 = Complex64::new(0.0, 0.0);
    let low2 = cutoff.min(top2);
    for n in low2..=top2 {
        direct2 += qpow(q, 2.0 * s * n as f64) * pref * ratio(n + 1 + deg_q);
    }
    let r = qf.powf(2.0 * s.re);
    let tail2 = bound_ratio * pref.norm() * r.powi((low2 - 1) as i32) / (1.0 - 1.0 / r);
    let closed2 = qf.powi((a - 1 - deg_q) as i32) / d
        * (qpow(q, -it * a as f64) / (1.0 - qpow(q, 2.0 * s + it)) - qpow(q, it * a as f64) / (1.0 - qpow(q, 2.0 * s - it)));
    let resum2 = {
        let r1 = qpow(q, -2.0 * s + it);
        let r2 = qpow(q, -2.0 * s - it);
        pref * qpow(q, -2.0 * s * (1 + deg_q) as f64) / d * (r1 / (1.0 - r1) - r2 / (1.0 - r2))
    };

    Ok(GeometricSums {
        a,
        deg_q,
        cutoff,
        first: SumEvaluation::new(closed1, direct1, tail1, resum1),
        second: SumEvaluation::new(closed2, direct2, tail2, resum2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whittaker_examples() {
        assert!((whittaker(5, 1.0, 0).unwrap() - 1.0).norm() < 1e-12);
        assert_eq!(whittaker(5, 1.0, -3).unwrap(), Complex64::new(0.0, 0.0));
        let it = Complex64::new(0.0, 1.0);
        let expect = qpow(5, it) + qpow(5, -it);
        assert!((whittaker(5, 1.0, 1).unwrap() - expect).norm() < 1e-12);
        let singular = std::f64::consts::PI / 5f64.ln();
        assert!(whittaker(5, singular, 2).is_err());
    }

    #[test]
    fn resummation_matches_direct() {
        let g = geometric_n_sums(5, 3, 0, Complex64::new(2.0, 0.0), 1.0, -40).unwrap();
        let d1 = Complex64::new(g.first.direct[0], g.first.direct[1]);
        let r1 = Complex64::new(g.first.resummed[0], g.first.resummed[1]);
        assert!((d1 - r1).norm() < 1e-10);
        let d2 = Complex64::new(g.second.direct[0], g.second.direct[1]);
        let r2 = Complex64::new(g.second.resummed[0], g.second.resummed[1]);
        assert!((d2 - r2).norm() < 1e-12);
    }

    #[test]
    fn conjugate_in_t() {
        let s = Complex64::new(1.5, 0.0);
        let a = geometric_n_sums(5, 3, 0, s, 0.8, -40).unwrap();
        let b = geometric_n_sums(5, 3, 0, s, -0.8, -40).unwrap();
        assert!((a.first.closed[0] - b.first.closed[0]).abs() < 1e-12);
        assert!((a.first.closed[1] + b.first.closed[1]).abs() < 1e-12);
    }
}
