//! Formal checks of the Dirichlet series attached to Ramanujan sums.
//!
//! Sums over nonzero X are taken over monic X: the zeta function
//! 1/(1 - q^(1-s)) counts q^d polynomials in degree d.

use super::report::{params, IdentityReport};
use super::useries::{zeta_series, USeries};
use crate::arith::{sigma_formal, RamanujanBrute};
use crate::error::{domain, Result};
use crate::ff::{factor, IrreducibleTable, Poly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::collections::HashMap;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Closed-form Ramanujan sums evaluated from table factorizations.
struct ClosedSums<'a> {
    table: &'a IrreducibleTable,
    /// P-adic valuations of Q at its prime factors; `None` for Q = 0.
    q_vals: Option<HashMap<Poly, u32>>,
}

impl<'a> ClosedSums<'a> {
    fn new(table: &'a IrreducibleTable, qp: &Poly) -> Result<Self> {
        let q_vals = if qp.is_zero() {
            None
        } else {
            Some(factor(qp)?.factors.into_iter().collect())
        };
        Ok(ClosedSums { table, q_vals })
    }

    /// mu(X/(X,Q)) phi(X) / phi(X/(X,Q)) for X given by its factorization.
    fn value(&self, fx: &[(usize, u32)]) -> i64 {
        let q = self.table.q() as i64;
        let mut phi_x = 1i64;
        let mut phi_xp = 1i64;
        let mut mu = 1i64;
        for &(i, e) in fx {
            let p = &self.table.polys()[i];
            let np = q.pow(p.degree().unwrap() as u32);
            let g = match &self.q_vals {
                None => e,
                Some(v) => e.min(v.get(p).copied().unwrap_or(0)),
            };
            let ep = e - g;
            phi_x *= np.pow(e - 1) * (np - 1);
            if ep > 0 {
                phi_xp *= np.pow(ep - 1) * (np - 1);
                mu = if ep >= 2 { 0 } else { -mu };
            }
        }
        mu * (phi_x / phi_xp)
    }
}

fn check_table(table: &IrreducibleTable, n: usize) -> Result<()> {
    if table.max_degree() < n {
        return domain(format!("irreducible table covers degree {} < {n}", table.max_degree()));
    }
    Ok(())
}

fn check_a(a: &Poly) -> Result<()> {
    if !a.is_monic() || !crate::ff::is_irreducible(a) {
        return domain(format!("A must be monic irreducible (got {a})"));
    }
    Ok(())
}

fn table_index(table: &IrreducibleTable, p: &Poly) -> Option<usize> {
    table.polys().iter().position(|x| x == p)
}

/// Sum over monic X of C_X(Q) |X|^-s against sigma_{1-s}(Q) / zeta(s), in u = q^-s.
///
/// For Q = 0 every monic D divides Q, so sigma_{1-s}(0) is read as
/// sum_D |D|^(1-s) = sum q^(2d) u^d.
pub fn verify_ramanujan_sum_series(qp: &Poly, n: usize, table: &IrreducibleTable) -> Result<IdentityReport> {
    check_table(table, n)?;
    if !(qp.is_zero() || qp.is_monic()) {
        return domain("Q must be monic or zero");
    }
    let q = qp.q();
    let sums = ClosedSums::new(table, qp)?;
    let mut lhs = vec![0i64; n + 1];
    table.for_each_factorization(n, |d, fx| lhs[d] += sums.value(fx));
    let lhs = USeries::from_ints(n, &lhs);
    let sigma = if qp.is_zero() {
        USeries::geometric(n, &rat((q as i64).pow(2)), 1)
    } else {
        USeries::from_coeffs(n, sigma_formal(qp, 1)?)
    };
    let rhs = sigma.div(&zeta_series(q, n))?;
    let p = params([("q", q.to_string()), ("Q", qp.to_string()), ("N", n.to_string()), ("variable", "u = q^-s".into())]);
    Ok(IdentityReport::compare("sum C_X(Q)|X|^-s = sigma_{1-s}(Q)/zeta(s)", p, &lhs, &rhs))
}

/// Sum over monic X with A | X of C_X(Q) |X|^-2s, in w = q^-2s, against
/// (sigma_{1-2s}(Q) - sigma_{1-2s}(Q A^-alpha) / (1 - q^-2as)) / zeta(2s).
pub fn verify_level_ramanujan_series(qp: &Poly, a: &Poly, n: usize, table: &IrreducibleTable) -> Result<IdentityReport> {
    check_table(table, n)?;
    check_a(a)?;
    if !qp.is_monic() {
        return domain("Q must be monic and nonzero");
    }
    let q = qp.q();
    let deg_a = a.degree().unwrap();
    let ai = table_index(table, a).expect("A in table");
    let alpha = qp.valuation(a)?;
    let cof = qp.div_exact(&a.pow(alpha))?;
    let sums = ClosedSums::new(table, qp)?;
    let mut lhs = vec![0i64; n + 1];
    table.for_each_factorization(n, |d, fx| {
        if fx.iter().any(|&(i, _)| i == ai) {
            lhs[d] += sums.value(fx);
        }
    });
    let lhs = USeries::from_ints(n, &lhs);
    let s_q = USeries::from_coeffs(n, sigma_formal(qp, 1)?);
    let s_cof = USeries::from_coeffs(n, sigma_formal(&cof, 1)?);
    let bracket = s_q.sub(&s_cof.mul(&USeries::geometric(n, &BigRational::one(), deg_a)));
    let rhs = bracket.div(&zeta_series(q, n))?;
    let p = params([
        ("q", q.to_string()),
        ("Q", qp.to_string()),
        ("A", a.to_string()),
        ("alpha", alpha.to_string()),
        ("N", n.to_string()),
        ("variable", "w = q^-2s".into()),
    ]);
    Ok(IdentityReport::compare(
        "sum_{A|X} C_X(Q)|X|^-2s = (sigma_{1-2s}(Q) - sigma_{1-2s}(QA^-alpha)/(1-q^-2as))/zeta(2s)",
        p,
        &lhs,
        &rhs,
    ))
}

/// Sum over monic X with A | X of phi(AX)/phi(A) |X|^-2s, in w = q^-2s, against
/// q^(a(1-2s)) / (1 - q^-2as) * zeta(2s-1) / zeta(2s).
pub fn verify_coprime_count_series(a: &Poly, n: usize, table: &IrreducibleTable) -> Result<IdentityReport> {
    check_table(table, n)?;
    check_a(a)?;
    let q = a.q();
    let deg_a = a.degree().unwrap();
    let ai = table_index(table, a).expect("A in table");
    let qi = q as i64;
    let na = qi.pow(deg_a as u32);
    let mut lhs = vec![0i64; n + 1];
    table.for_each_factorization(n, |d, fx| {
        if !fx.iter().any(|&(i, _)| i == ai) {
            return;
        }
        // phi(AX): bump the exponent of A.
        let phi_ax: i64 = fx
            .iter()
            .map(|&(i, e)| {
                let np = qi.pow(table.degree_of(i) as u32);
                let e = if i == ai { e + 1 } else { e };
                np.pow(e - 1) * (np - 1)
            })
            .product();
        lhs[d] += phi_ax / (na - 1);
    });
    let lhs = USeries::from_ints(n, &lhs);
    let lead = USeries::monomial(n, rat(na), deg_a);
    let rhs = lead
        .mul(&USeries::geometric(n, &BigRational::one(), deg_a))
        .mul(&USeries::geometric(n, &rat(qi * qi), 1))
        .div(&zeta_series(q, n))?;
    let p = params([("q", q.to_string()), ("A", a.to_string()), ("N", n.to_string()), ("variable", "w = q^-2s".into())]);
    Ok(IdentityReport::compare(
        "sum_{A|X} phi(AX)/phi(A)|X|^-2s = q^{a(1-2s)}/(1-q^-2as) zeta(2s-1)/zeta(2s)",
        p,
        &lhs,
        &rhs,
    ))
}

/// For monic X with A | X and deg X <= `max_deg`: (X, direct count of Y, phi(AX)/phi(A)).
pub fn coprime_count_inner(a: &Poly, max_deg: usize) -> Result<Vec<(Poly, u64, u64)>> {
    check_a(a)?;
    let mut out = Vec::new();
    for x in crate::ff::monic_up_to(a.q(), max_deg) {
        if !a.divides(&x) {
            continue;
        }
        let count = RamanujanBrute::new(&x, a, 0)?.count() as u64;
        let closed = crate::arith::totient(&(a * &x))? / crate::arith::totient(a)?;
        out.push((x, count, closed));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ramanujan_closed;

    fn p(s: &str) -> Poly {
        Poly::parse(5, s).unwrap()
    }

    #[test]
    fn table_closed_form_agrees_with_direct() {
        let t = IrreducibleTable::new(5, 4);
        for qp in [Poly::zero(5), p("T"), p("T^2+T"), p("T^3")] {
            let sums = ClosedSums::new(&t, &qp).unwrap();
            t.for_each_monic(4, |x, fx| {
                assert_eq!(sums.value(fx), ramanujan_closed(x, &qp).unwrap(), "X={x} Q={qp}");
            });
        }
    }

    #[test]
    fn sum_series_small() {
        let t = IrreducibleTable::new(5, 4);
        let r = verify_ramanujan_sum_series(&Poly::one(5), 4, &t).unwrap();
        assert!(r.passed());
        assert_eq!(r.coefficients[1].lhs, "-5");
        assert_eq!(r.coefficients[2].lhs, "0");
        assert!(verify_ramanujan_sum_series(&Poly::zero(5), 4, &t).unwrap().passed());
        assert!(verify_ramanujan_sum_series(&p("2*T"), 4, &t).is_err());
    }

    #[test]
    fn coprime_count_inner_small() {
        for (x, c, closed) in coprime_count_inner(&p("T"), 2).unwrap() {
            assert_eq!(c, closed, "X = {x}");
        }
    }
}
