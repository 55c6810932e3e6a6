//! The additive character chi(x) = zeta^(coefficient of T^-1 in x) of
//! F_q((T^-1)) / F_q[T], its twists chi_Q(x) = chi(Qx), and exact averages
//! over the compact quotient.

use crate::cyclotomic::{CycInt, CycRational};
use crate::error::{Error, Result};
use crate::ff::{Laurent, Poly};
use num_complex::Complex64;

/// Largest number of sample points an exact average may visit.
pub const MAX_SAMPLES: u64 = 5u64.pow(9);

/// Exponent a1 with chi(x) = zeta^a1.
pub fn chi_exponent(x: &Laurent) -> Result<u32> {
    x.coeff_neg(1)
}

pub fn chi(x: &Laurent) -> Result<CycInt> {
    Ok(CycInt::zeta_pow(x.q(), chi_exponent(x)? as i64))
}

/// Exponent of chi(Q x); reads the coefficients of T^-1 .. T^-(deg Q + 1).
pub fn chi_twisted_exponent(qp: &Poly, x: &Laurent) -> Result<u32> {
    let q = x.q();
    let mut acc = 0u64;
    for (i, &c) in qp.coeffs().iter().enumerate() {
        if c != 0 {
            acc += c as u64 * x.coeff_neg(1 + i as i64)? as u64;
        }
    }
    Ok((acc % q as u64) as u32)
}

pub fn chi_twisted(qp: &Poly, x: &Laurent) -> Result<CycInt> {
    Ok(CycInt::zeta_pow(x.q(), chi_twisted_exponent(qp, x)? as i64))
}

/// The q^depth points sum_{k=1..depth} a_k T^-k, each exact.
pub fn unit_samples(q: u32, depth: usize) -> impl Iterator<Item = Laurent> {
    let total = (q as u64).pow(depth as u32);
    (0..total).map(move |mut idx| {
        let mut terms = Vec::with_capacity(depth);
        for k in 1..=depth as i64 {
            terms.push(((idx % q as u64) as i64, k));
            idx /= q as u64;
        }
        Laurent::from_terms(q, &terms, crate::ff::EXACT)
    })
}

fn check_samples(q: u32, depth: usize) -> Result<u64> {
    let n = (q as u64).checked_pow(depth as u32).unwrap_or(u64::MAX);
    if depth == 0 || n > MAX_SAMPLES {
        return Err(Error::Resource(format!("integration depth {depth} needs {n} samples")));
    }
    Ok(n)
}

/// Exact average of a coefficient-finite function over the unit ball.
///
/// The caller promises `f` depends only on the coefficients of T^-1..T^-depth.
pub fn integrate_unit<F>(q: u32, depth: usize, f: F) -> Result<CycRational>
where
    F: Fn(&Laurent) -> Result<CycInt>,
{
    let n = check_samples(q, depth)?;
    let mut acc = CycInt::zero(q);
    for x in unit_samples(q, depth) {
        acc = acc.add(&f(&x)?);
    }
    Ok(CycRational::new(acc, n))
}

/// Complex-valued variant of [`integrate_unit`].
pub fn integrate_unit_complex<F>(q: u32, depth: usize, f: F) -> Result<Complex64>
where
    F: Fn(&Laurent) -> Result<Complex64>,
{
    let n = check_samples(q, depth)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for x in unit_samples(q, depth) {
        acc += f(&x)?;
    }
    Ok(acc / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> Laurent {
        Laurent::parse(5, s).unwrap()
    }

    fn p(s: &str) -> Poly {
        Poly::parse(5, s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(chi(&Laurent::zero(5, 4)).unwrap(), CycInt::one(5));
        assert_eq!(chi(&lp("T^-1")).unwrap(), CycInt::zeta_pow(5, 1));
        assert_eq!(chi(&lp("T^3")).unwrap(), CycInt::one(5));
        assert_eq!(chi_twisted(&Poly::zero(5), &lp("T^-1")).unwrap(), CycInt::one(5));
        assert_eq!(chi_twisted(&p("T"), &lp("T^-2")).unwrap(), CycInt::zeta_pow(5, 1));
        assert_eq!(chi_twisted(&p("T+1"), &lp("2*T^-1")).unwrap(), CycInt::zeta_pow(5, 2));
    }

    #[test]
    fn precision_is_enforced() {
        assert!(chi(&lp("T^-1 (prec 1)")).is_err());
        assert!(chi_twisted(&p("T^2"), &lp("T^-1 (prec 3)")).is_err());
        assert!(chi_twisted(&p("T^2"), &lp("T^-1 (prec 4)")).is_ok());
    }

    #[test]
    fn twisted_matches_product() {
        let qp = p("3*T^2+T+4");
        for x in unit_samples(5, 4) {
            let direct = chi_exponent(&x.mul_poly(&qp)).unwrap();
            assert_eq!(chi_twisted_exponent(&qp, &x).unwrap(), direct);
        }
    }

    #[test]
    fn integrals() {
        let one = integrate_unit(5, 3, |_| Ok(CycInt::one(5))).unwrap();
        assert_eq!(one.to_integer(), Some(1));
        let z = integrate_unit(5, 3, |x| chi_twisted(&Poly::zero(5), x)).unwrap();
        assert_eq!(z.to_integer(), Some(1));
        let t = integrate_unit(5, 3, |x| chi_twisted(&p("T"), x)).unwrap();
        assert_eq!(t.to_integer(), Some(0));
        assert!(integrate_unit(5, 12, |_| Ok(CycInt::one(5))).is_err());
    }
}
