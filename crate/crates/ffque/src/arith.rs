//! Multiplicative functions on F_q[T] and Ramanujan sums.

use crate::character::chi_twisted_exponent;
use crate::cyclotomic::CycInt;
use crate::error::{domain, Error, Result};
use crate::ff::{factor, monic_up_to, polys_below, Factorization, Laurent, Poly};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

/// Largest deg(AX) for which the Ramanujan sum is enumerated.
pub const RAMANUJAN_MAX_DEGREE: usize = 8;

fn require_monic(x: &Poly, what: &str) -> Result<()> {
    if !x.is_monic() {
        return domain(format!("{what} must be monic and nonzero (got {x})"));
    }
    Ok(())
}

pub fn mobius_of(f: &Factorization) -> i8 {
    if !f.is_squarefree() {
        0
    } else if f.factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn mobius(x: &Poly) -> Result<i8> {
    require_monic(x, "argument of mu")?;
    Ok(mobius_of(&factor(x)?))
}

/// phi from a factorization: prod |P|^(e-1) (|P| - 1).
pub fn totient_of(q: u32, f: &Factorization) -> u64 {
    f.factors
        .iter()
        .map(|(p, e)| {
            let np = (q as u64).pow(p.degree().unwrap() as u32);
            np.pow(e - 1) * (np - 1)
        })
        .product()
}

pub fn totient(x: &Poly) -> Result<u64> {
    if x.is_zero() {
        return domain("totient of zero");
    }
    Ok(totient_of(x.q(), &factor(x)?))
}

/// phi(X) by counting residues coprime to X.
pub fn totient_by_count(x: &Poly) -> Result<u64> {
    let Some(d) = x.degree() else {
        return domain("totient of zero");
    };
    Ok(polys_below(x.q(), d).filter(|y| y.gcd(x).is_one()).count() as u64)
}

/// sigma_nu(Q) = sum over monic D | Q of |D|^nu.
pub fn sigma(qp: &Poly, nu: Complex64) -> Result<Complex64> {
    require_monic(qp, "argument of sigma")?;
    let lq = (qp.q() as f64).ln();
    Ok(factor(qp)?
        .divisor_degrees()
        .into_iter()
        .map(|d| (nu * lq * d as f64).exp())
        .sum())
}

/// Formal sigma: coefficient k is (number of monic divisors of degree k) * q^(weight k).
///
/// With weight 1 this is sigma_{1-s}(Q) as a polynomial in u = q^-s; with
/// weight 1 in the variable w = q^-2s it is sigma_{1-2s}(Q).
pub fn sigma_formal(qp: &Poly, weight: i64) -> Result<Vec<BigRational>> {
    require_monic(qp, "argument of sigma")?;
    let degs = factor(qp)?.divisor_degrees();
    Ok(sigma_formal_from_degrees(qp.q(), &degs, weight))
}

pub(crate) fn sigma_formal_from_degrees(q: u32, degs: &[usize], weight: i64) -> Vec<BigRational> {
    let top = degs.iter().copied().max().unwrap_or(0);
    let mut counts = vec![0i64; top + 1];
    for &d in degs {
        counts[d] += 1;
    }
    let qr = BigRational::from_integer(BigInt::from(q));
    counts
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let w = num_traits::pow::Pow::pow(&qr, weight * k as i64);
            BigRational::from_integer(BigInt::from(c)) * w
        })
        .collect()
}

/// mu(X') phi(X) / phi(X') with X' = X / (X, Q), using (X, 0) = X.
pub fn ramanujan_closed(x: &Poly, qp: &Poly) -> Result<i64> {
    require_monic(x, "X")?;
    let q = x.q();
    let g = x.gcd(qp);
    let xp = x.div_exact(&g)?;
    let fx = factor(x)?;
    let fxp = factor(&xp)?;
    let mu = mobius_of(&fxp) as i64;
    Ok(mu * (totient_of(q, &fx) / totient_of(q, &fxp)) as i64)
}

/// Brute-force C_X(Q) = sum over Y mod AX, Y = 1 mod A, (X, Y) = 1 of chi_Q(Y/X).
///
/// The admissible Y and the quotients Y/X are prepared once; each query
/// then reads a few coefficients per Y.
pub struct RamanujanBrute {
    q: u32,
    points: Vec<Laurent>,
    max_q_degree: usize,
}

impl RamanujanBrute {
    pub fn new(x: &Poly, a: &Poly, max_q_degree: usize) -> Result<RamanujanBrute> {
        Self::with_bound(x, a, max_q_degree, RAMANUJAN_MAX_DEGREE)
    }

    pub fn with_bound(x: &Poly, a: &Poly, max_q_degree: usize, bound: usize) -> Result<RamanujanBrute> {
        require_monic(x, "X")?;
        require_monic(a, "A")?;
        if a.is_one() {
            return domain("A must be irreducible");
        }
        let q = x.q();
        let dx = x.degree().unwrap();
        let da = a.degree().unwrap();
        if dx + da > bound {
            return Err(Error::Resource(format!("deg(AX) = {} exceeds bound {bound}", dx + da)));
        }
        let cap = (max_q_degree + da + dx + 3) as i64;
        let xinv = Laurent::from_poly(x).inverse(cap)?;
        let one = Poly::one(q);
        let points = polys_below(q, dx + da)
            .filter(|y| (y - &one).rem(a).map(|r| r.is_zero()).unwrap_or(false))
            .filter(|y| y.gcd(x).is_one())
            .map(|y| Laurent::from_poly(&y).mul(&xinv))
            .collect();
        Ok(RamanujanBrute { q, points, max_q_degree })
    }

    /// Number of admissible Y.
    pub fn count(&self) -> usize {
        self.points.len()
    }

    pub fn sum(&self, qp: &Poly) -> Result<CycInt> {
        if qp.degree().unwrap_or(0) > self.max_q_degree {
            return domain(format!("deg Q above prepared bound {}", self.max_q_degree));
        }
        let mut counts = vec![0i64; self.q as usize];
        for z in &self.points {
            counts[chi_twisted_exponent(qp, z)? as usize] += 1;
        }
        Ok(CycInt::from_powers(self.q, &counts))
    }
}

pub fn ramanujan_brute(x: &Poly, qp: &Poly, a: &Poly) -> Result<CycInt> {
    RamanujanBrute::new(x, a, qp.degree().unwrap_or(0))?.sum(qp)
}

/// One line of the brute-versus-closed comparison.
#[derive(Clone, Debug, Serialize)]
pub struct DiscrepancyRow {
    pub q: u32,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "X")]
    pub x: String,
    #[serde(rename = "Q")]
    pub qp: String,
    pub brute_value: String,
    pub closed_value: i64,
    pub match_flag: bool,
    #[serde(skip)]
    pub a_divides_x: bool,
}

/// Compares brute and closed Ramanujan sums over all monic X with
/// deg X <= `deg_x`, all Q with deg Q <= `deg_q` (zero included) and each A.
pub fn ramanujan_discrepancy(q: u32, a_list: &[Poly], deg_x: usize, deg_q: usize) -> Result<Vec<DiscrepancyRow>> {
    let xs: Vec<Poly> = monic_up_to(q, deg_x).collect();
    let qs: Vec<Poly> = polys_below(q, deg_q + 1).collect();
    let mut jobs = Vec::new();
    for a in a_list {
        for x in &xs {
            jobs.push((a.clone(), x.clone()));
        }
    }
    let blocks: Vec<Result<Vec<DiscrepancyRow>>> = jobs
        .par_iter()
        .map(|(a, x)| {
            let brute = RamanujanBrute::new(x, a, deg_q)?;
            let a_divides_x = a.divides(x);
            qs.iter()
                .map(|qp| {
                    let b = brute.sum(qp)?;
                    let c = ramanujan_closed(x, qp)?;
                    Ok(DiscrepancyRow {
                        q,
                        a: a.to_string(),
                        x: x.to_string(),
                        qp: qp.to_string(),
                        brute_value: b.to_string(),
                        closed_value: c,
                        match_flag: b.to_integer() == Some(c),
                        a_divides_x,
                    })
                })
                .collect()
        })
        .collect();
    let mut rows = Vec::new();
    for b in blocks {
        rows.extend(b?);
    }
    Ok(rows)
}

pub fn write_discrepancy_csv<W: std::io::Write>(rows: &[DiscrepancyRow], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for r in rows {
        wr.serialize(r).map_err(|e| Error::Resource(format!("csv write failed: {e}")))?;
    }
    wr.flush().map_err(|e| Error::Resource(format!("csv flush failed: {e}")))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(5, s).unwrap()
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(&p("T^2")).unwrap(), 0);
        assert_eq!(mobius(&p("T")).unwrap(), -1);
        assert_eq!(mobius(&p("T^2+T")).unwrap(), 1);
        assert!(mobius(&p("2*T")).is_err());
        assert!(mobius(&Poly::zero(5)).is_err());
    }

    #[test]
    fn totient_examples() {
        assert_eq!(totient(&p("T")).unwrap(), 4);
        assert_eq!(totient(&p("T^2")).unwrap(), 20);
        assert_eq!(totient_by_count(&p("T^2")).unwrap(), 20);
        assert_eq!(totient(&Poly::one(5)).unwrap(), 1);
        assert!(totient(&Poly::zero(5)).is_err());
    }

    #[test]
    fn sigma_examples() {
        let z = Complex64::new(0.0, 0.0);
        assert!((sigma(&p("T^2"), z).unwrap() - 3.0).norm() < 1e-12);
        assert!((sigma(&Poly::one(5), Complex64::new(0.3, -2.0)).unwrap() - 1.0).norm() < 1e-12);
        let nu = Complex64::new(0.0, -2.0);
        let expect = 1.0 + (nu * 5f64.ln()).exp();
        assert!((sigma(&p("T"), nu).unwrap() - expect).norm() < 1e-12);
        let f = sigma_formal(&p("T^2"), 1).unwrap();
        let ints: Vec<String> = f.iter().map(|c| c.to_string()).collect();
        assert_eq!(ints, vec!["1", "5", "25"]);
    }

    #[test]
    fn ramanujan_examples() {
        let x = p("T");
        let a = p("T+1");
        assert_eq!(ramanujan_brute(&Poly::one(5), &p("T^2+3"), &a).unwrap(), CycInt::one(5));
        assert_eq!(ramanujan_brute(&x, &Poly::zero(5), &a).unwrap().to_integer(), Some(4));
        assert_eq!(ramanujan_brute(&x, &Poly::one(5), &a).unwrap().to_integer(), Some(-1));
        assert_eq!(ramanujan_closed(&x, &Poly::one(5)).unwrap(), -1);
        assert_eq!(ramanujan_closed(&p("T^2+T+1"), &Poly::zero(5)).unwrap(), 24);
        assert_eq!(ramanujan_closed(&p("T^2"), &p("T+3")).unwrap(), 0);
        let big = p("T^5+1");
        assert!(matches!(RamanujanBrute::new(&big, &p("T^4+2"), 0), Err(Error::Resource(_))));
    }

    #[test]
    fn inner_count_is_phi_ax_over_phi_a() {
        for a in [p("T"), p("T+1")] {
            for x in monic_up_to(5, 2) {
                let n = RamanujanBrute::new(&x, &a, 0).unwrap().count() as u64;
                let ax = &a * &x;
                assert_eq!(n * totient(&a).unwrap(), totient(&ax).unwrap());
            }
        }
    }
}
