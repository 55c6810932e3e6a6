use super::cosets::enumerate_cosets;
use crate::error::{domain, Error, Result};
use crate::ff::{enumerate_polys, polys_below, Laurent, Norm, Poly};
use crate::tree::TreeVertex;
use num_complex::Complex64;
use serde::Serialize;

/// A point `[[T^n, x], [0, 1]]` of G/K.
pub type GroupPoint = TreeVertex;

/// Highest coset degree the adaptive summation may reach.
pub const MAX_SUM_DEGREE: usize = 4000;

/// Deepest fractional resolution (`-n - 1`) handled by direct enumeration.
pub const MAX_RESOLUTION: i64 = 6;

pub(crate) fn qpow(q: u32, w: Complex64) -> Complex64 {
    (w * (q as f64).ln()).exp()
}

/// A coset-sum value with a certified bound on the discarded tail.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EisValue {
    pub value: Complex64,
    pub truncation_bound: f64,
    /// Largest `deg c` included.
    pub degree: usize,
}

impl EisValue {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "value_re": self.value.re,
            "value_im": self.value.im,
            "truncation_bound": self.truncation_bound,
        })
    }
}

fn check_level(a: &Poly) -> Result<usize> {
    if !a.is_monic() {
        return domain(format!("level must be monic (got {a})"));
    }
    if !a.is_one() && !crate::ff::is_irreducible(a) {
        return domain(format!("level must be irreducible (got {a})"));
    }
    Ok(a.degree().unwrap())
}

/// `max(q^n, |f|)^(-2s)` where only the top `L` fractional digits of `f` matter.
fn f_weight(q: u32, n: i64, s: Complex64, frac: &Laurent, l: i64) -> Result<Complex64> {
    for k in 1..=l {
        if frac.coeff_neg(k)? != 0 {
            return Ok(qpow(q, s * (2 * k) as f64));
        }
    }
    Ok(qpow(q, -s * (2 * n) as f64))
}

/// Per-height constants of the inner sums.
struct Height {
    q: u32,
    n: i64,
    l: i64,
    /// Sum over `m != 0` of `max(q^n, |m|)^(-2s)`.
    k_n: Complex64,
    /// Sum of the weight over all `q^L` digit patterns.
    p_n: Complex64,
}

impl Height {
    fn new(q: u32, n: i64, s: Complex64) -> Height {
        let qf = q as f64;
        let one = Complex64::new(1.0, 0.0);
        let geo = one / (one - qpow(q, one - s * 2.0));
        let k_n = if n <= 0 {
            (qf - 1.0) * geo
        } else {
            (qf.powi(n as i32) - 1.0) * qpow(q, -s * (2 * n) as f64)
                + (qf - 1.0) * qpow(q, (one - s * 2.0) * n as f64) * geo
        };
        let l = (-n - 1).max(0);
        let mut p_n = qpow(q, -s * (2 * n) as f64);
        for j in 1..=l {
            p_n += (qf - 1.0) * qf.powi((l - j) as i32) * qpow(q, s * (2 * j) as f64);
        }
        Height { q, n, l, k_n, p_n }
    }

    /// `sum over r mod c of weight(x + r/c)` for `deg c < L`.
    fn g_small(&self, s: Complex64, x: &Laurent, c: &Poly) -> Result<Complex64> {
        let q = self.q;
        let lc = Laurent::from_poly(c);
        let mut acc = Complex64::new(0.0, 0.0);
        for r in polys_below(q, c.degree().unwrap()) {
            let y = Laurent::from_poly(&r).div_to(&lc, self.l + 1)?.add(x);
            acc += f_weight(q, self.n, s, &y.fractional_part(), self.l)?;
        }
        Ok(acc)
    }
}

/// Coefficients of a series in z given by its first terms and a linear recurrence.
struct Slices {
    /// `Phi_k z^k`, where `Phi_k` sums Euler's function over monic `c`, `A | c`, `deg c = k`.
    phi: Vec<Complex64>,
    recur: Box<dyn Fn(&[Complex64], usize) -> Complex64>,
}

impl Slices {
    fn new(q: u32, deg_a: usize, z: Complex64) -> Slices {
        let qf = q as f64;
        if deg_a == 0 {
            // (1 - q z) / (1 - q^2 z): Phi_0 = 1, Phi_k = q^2k (1 - 1/q).
            let r = z * qf * qf;
            return Slices {
                phi: vec![Complex64::new(1.0, 0.0)],
                recur: Box::new(move |p, k| if k == 1 { r * (1.0 - 1.0 / qf) } else { p[k - 1] * r }),
            };
        }
        // (|A| - 1) z^a (1 - q z) / ((1 - q^2 z)(1 - z^a)).
        let a = deg_a;
        let abs_a = qf.powi(a as i32);
        let za = z.powi(a as i32);
        let qq = z * qf * qf;
        Slices {
            phi: Vec::new(),
            recur: Box::new(move |p, k| {
                let at = |i: isize| if i < 0 { Complex64::new(0.0, 0.0) } else { p[i as usize] };
                let k = k as isize;
                let a = a as isize;
                let mut v = qq * at(k - 1) + za * at(k - a) - qq * za * at(k - a - 1);
                if k == a {
                    v += (abs_a - 1.0) * za;
                }
                if k == a + 1 {
                    v -= (abs_a - 1.0) * qf * za * z;
                }
                v
            }),
        }
    }

    fn get(&mut self, k: usize) -> Complex64 {
        while self.phi.len() <= k {
            let n = self.phi.len();
            let v = (self.recur)(&self.phi, n);
            self.phi.push(v);
        }
        self.phi[k]
    }
}

/// Coefficient of z^i in `sum over squarefree e with A | c e of mu(e) z^deg e`.
fn mobius_coeff(q: u32, deg_a: usize, a_divides_c: bool, i: usize) -> f64 {
    let qf = q as f64;
    if a_divides_c || deg_a == 0 {
        return match i {
            0 => 1.0,
            1 => -qf,
            _ => 0.0,
        };
    }
    // -(1 - q z) z^a / (1 - z^a)
    let mut v = 0.0;
    if i >= deg_a && i % deg_a == 0 {
        v -= 1.0;
    }
    if i >= deg_a + 1 && (i - 1) % deg_a == 0 {
        v += qf;
    }
    v
}

/// `E(g, s)` at the cusp infinity for `Gamma0(A)`, summed over cosets by
/// increasing `deg c` until the geometric tail bound drops below `tol`.
pub fn eval_direct(g: &GroupPoint, s: Complex64, a: &Poly, tol: f64) -> Result<EisValue> {
    if s.re <= 1.0 {
        return domain(format!("the coset sum converges only for Re s > 1 (got {s})"));
    }
    if tol <= 0.0 || !tol.is_finite() {
        return domain("tolerance must be positive");
    }
    let q = g.q();
    let deg_a = check_level(a)?;
    let n = g.n();
    let h = Height::new(q, n, s);
    if h.l > MAX_RESOLUTION {
        return Err(Error::Resource(format!("height {n} needs {} fractional digits", h.l)));
    }
    let qf = q as f64;
    let z = qpow(q, -s * 2.0);
    let scale = qpow(q, s * n as f64);
    let b = h.k_n + h.p_n / qf.powi(h.l as i32);

    // Corrections from small moduli c' (deg c' < L), split by whether A | c'.
    let x = g.x();
    let l = h.l as usize;
    let mut corr_div = vec![Complex64::new(0.0, 0.0); l];
    let mut corr_nd = vec![Complex64::new(0.0, 0.0); l];
    let mut corr_abs = vec![0.0; l];
    for j in 0..l {
        for c in enumerate_polys(q, j, true) {
            let d = h.g_small(s, x, &c)? - h.p_n * qf.powi(j as i32 - h.l as i32);
            corr_abs[j] += d.norm();
            if a.divides(&c) {
                corr_div[j] += d;
            } else {
                corr_nd[j] += d;
            }
        }
    }

    let mut phi = Slices::new(q, deg_a, z);
    let zn = z.norm();
    let rho1 = qf * qf * zn;
    let rho2 = qf * zn;
    let tail = |k: usize| -> f64 {
        let main = b.norm() * qf.powi(-(deg_a as i32)) * rho1.powi(k as i32 + 1) / (1.0 - rho1);
        let small: f64 = (0..l).map(|j| corr_abs[j] * qf.powi(-(j as i32)) * rho2.powi(k as i32 + 1) / (1.0 - rho2)).sum();
        scale.norm() * (main + small)
    };
    let mut total = Complex64::new(1.0, 0.0);
    let mut k = 0usize;
    loop {
        let mut slice = phi.get(k) * b;
        for j in 0..l.min(k + 1) {
            let i = k - j;
            let cd = mobius_coeff(q, deg_a, true, i);
            let cn = mobius_coeff(q, deg_a, false, i);
            if cd != 0.0 || cn != 0.0 {
                slice += (corr_div[j] * cd + corr_nd[j] * cn) * z.powi(k as i32);
            }
        }
        total += slice;
        let bound = tail(k);
        if bound < tol {
            return Ok(EisValue { value: scale * total, truncation_bound: bound, degree: k });
        }
        k += 1;
        if k > MAX_SUM_DEGREE {
            return Err(Error::Resource(format!("tail bound {bound:e} still above {tol:e} at degree {k}")));
        }
    }
}

/// Literal coset sum over bottom rows of degree at most `maxdeg`; no tail control.
pub fn eval_naive(g: &GroupPoint, s: Complex64, a: &Poly, maxdeg: usize) -> Result<Complex64> {
    let q = g.q();
    check_level(a)?;
    let n = g.n();
    let x = g.x();
    let mut acc = Complex64::new(0.0, 0.0);
    for rep in enumerate_cosets(a, maxdeg)? {
        let h1 = rep.c.norm() * Norm::QPow(n);
        let h2 = x.mul_poly(&rep.c).add(&Laurent::from_poly(&rep.d)).norm();
        let e = match h1.max(h2) {
            Norm::QPow(e) => e,
            Norm::Zero => continue,
        };
        acc += qpow(q, s * (n - 2 * e) as f64);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn gp(s: &str) -> GroupPoint {
        GroupPoint::parse(5, s).unwrap()
    }

    #[test]
    fn known_values() {
        let t = Poly::t(5);
        let one = Poly::one(5);
        let v = |g: &str, a: &Poly| eval_direct(&gp(g), c(2.0), a, 1e-13).unwrap().value.re;
        assert!((v("n=0,x=0", &t) - (1.0 + 1.0 / 30.0)).abs() < 1e-10);
        assert!((v("n=1,x=0", &t) - 25.00666666666).abs() < 1e-8);
        assert!((v("n=-1,x=0", &t) - 0.20666666666).abs() < 1e-8);
        assert!((v("n=1,x=0", &one) - 26.04).abs() < 1e-10);
        assert!((v("n=-1,x=0", &one) - 26.04).abs() < 1e-10);
        assert!((v("n=0,x=0", &one) - 6.2).abs() < 1e-10);
    }

    #[test]
    fn matches_literal_sum() {
        let t = Poly::t(5);
        for g in ["n=0,x=0", "n=-2,x=T^-1", "n=-3,x=2*T^-1+T^-2", "n=1,x=0"] {
            let fast = eval_direct(&gp(g), c(2.0), &t, 1e-12).unwrap().value;
            // The literal sum also cuts d at degree 4.
            let slow = eval_naive(&gp(g), c(2.0), &t, 4).unwrap();
            assert!((fast - slow).norm() / fast.norm() < 1e-4, "{g}: {fast} vs {slow}");
        }
    }

    #[test]
    fn identity_coset_contribution() {
        let a = Poly::parse(5, "T+1").unwrap();
        let s = Complex64::new(2.5, 1.0);
        let g = gp("n=2,x=0");
        let only_identity = eval_naive(&g, s, &a, 0).unwrap();
        assert!((only_identity - qpow(5, s * 2.0)).norm() < 1e-9);
    }

    #[test]
    fn rejects_non_convergent_s() {
        assert!(eval_direct(&gp("n=0,x=0"), c(1.0), &Poly::t(5), 1e-6).is_err());
    }
}
