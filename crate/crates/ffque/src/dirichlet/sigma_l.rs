//! Twisted divisor sums against completely multiplicative coefficients.
//!
//! Series live in two formal variables: u = q^-s and v = q^nu, so |Q|^-s = u^deg Q,
//! sigma_nu(Q) = sum_{D|Q} v^deg D and zeta(2s - nu) = 1/(1 - q u^2 v).

use crate::error::{domain, Error, Result};
use crate::ff::{factor, IrreducibleTable, Poly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

/// Truncated series in u and v; `c[i][j]` is the coefficient of u^i v^j, i, j <= n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    n: usize,
    c: Vec<Vec<BigRational>>,
}

impl BiSeries {
    pub fn zero(n: usize) -> BiSeries {
        BiSeries { n, c: vec![vec![BigRational::zero(); n + 1]; n + 1] }
    }

    pub fn one(n: usize) -> BiSeries {
        let mut s = BiSeries::zero(n);
        s.c[0][0] = BigRational::one();
        s
    }

    pub fn term(n: usize, c: BigRational, i: usize, j: usize) -> BiSeries {
        let mut s = BiSeries::zero(n);
        if i <= n && j <= n {
            s.c[i][j] = c;
        }
        s
    }

    pub fn coeff(&self, i: usize, j: usize) -> &BigRational {
        &self.c[i][j]
    }

    pub fn add(&self, o: &BiSeries) -> BiSeries {
        let mut r = self.clone();
        for i in 0..=self.n {
            for j in 0..=self.n {
                r.c[i][j] += &o.c[i][j];
            }
        }
        r
    }

    pub fn sub(&self, o: &BiSeries) -> BiSeries {
        let mut r = self.clone();
        for i in 0..=self.n {
            for j in 0..=self.n {
                r.c[i][j] -= &o.c[i][j];
            }
        }
        r
    }

    pub fn mul(&self, o: &BiSeries) -> BiSeries {
        let n = self.n;
        let mut r = BiSeries::zero(n);
        for i in 0..=n {
            for j in 0..=n {
                let a = &self.c[i][j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..=n - i {
                    for l in 0..=n - j {
                        let b = &o.c[k][l];
                        if !b.is_zero() {
                            r.c[i + k][j + l] += a * b;
                        }
                    }
                }
            }
        }
        r
    }

    /// Inverse of a series with constant term 1 whose other terms all carry u.
    pub fn inverse(&self) -> Result<BiSeries> {
        if !self.c[0][0].is_one() || (1..=self.n).any(|j| !self.c[0][j].is_zero()) {
            return domain("bivariate inverse needs constant term 1 and u-divisible tail");
        }
        let x = BiSeries::one(self.n).sub(self);
        let mut acc = BiSeries::one(self.n);
        let mut pw = BiSeries::one(self.n);
        for _ in 0..self.n {
            pw = pw.mul(&x);
            acc = acc.add(&pw);
        }
        Ok(acc)
    }

    /// f(u) placed on the diagonal direction u -> u v^k: coefficient a_i goes to u^i v^(k i).
    pub fn from_univariate(n: usize, a: &[BigRational], k: usize) -> BiSeries {
        let mut s = BiSeries::zero(n);
        for (i, c) in a.iter().enumerate().take(n + 1) {
            if k * i <= n {
                s.c[i][k * i] = c.clone();
            }
        }
        s
    }

    /// Rows as strings for reports.
    pub fn rows(&self) -> Vec<Vec<String>> {
        self.c.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }
}

/// Completely multiplicative values c(P) on monic irreducibles of a table.
#[derive(Clone, Debug)]
pub struct SyntheticMultiplicative {
    table: Arc<IrreducibleTable>,
    values: Vec<BigRational>,
    index: HashMap<Poly, usize>,
}

impl SyntheticMultiplicative {
    pub fn from_values(table: Arc<IrreducibleTable>, values: Vec<BigRational>) -> Self {
        assert_eq!(values.len(), table.polys().len());
        let index = table.polys().iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        SyntheticMultiplicative { table, values, index }
    }

    pub fn constant(table: Arc<IrreducibleTable>, c: i64) -> Self {
        let n = table.polys().len();
        Self::from_values(table, vec![BigRational::from_integer(BigInt::from(c)); n])
    }

    /// Random values num/den with |num| <= 6 and 1 <= den <= 6 on primes of
    /// degree <= `support`, zero on the rest.
    pub fn random(table: Arc<IrreducibleTable>, seed: u64, support: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..table.polys().len())
            .map(|i| {
                if table.degree_of(i) > support {
                    return BigRational::zero();
                }
                let num: i64 = rng.gen_range(-6..=6);
                let den: i64 = rng.gen_range(1..=6);
                BigRational::new(BigInt::from(num), BigInt::from(den))
            })
            .collect();
        Self::from_values(table, values)
    }

    pub fn table(&self) -> &IrreducibleTable {
        &self.table
    }

    pub fn prime_value(&self, i: usize) -> &BigRational {
        &self.values[i]
    }

    /// c(Q) for monic nonzero Q by complete multiplicativity; c(1) = 1.
    pub fn value(&self, qp: &Poly) -> Result<BigRational> {
        if !qp.is_monic() {
            return domain("synthetic coefficients are defined on monic Q");
        }
        let mut v = BigRational::one();
        for (p, e) in factor(qp)?.factors {
            let i = *self
                .index
                .get(&p)
                .ok_or_else(|| Error::Domain(format!("prime {p} outside the coefficient table")))?;
            v *= num_traits::pow::Pow::pow(&self.values[i], e);
        }
        Ok(v)
    }

    /// L(u) = sum c(Q) u^deg Q from the Euler product prod (1 - c(P) u^deg P)^-1.
    pub fn l_series(&self, n: usize) -> Vec<BigRational> {
        let mut acc = vec![BigRational::zero(); n + 1];
        acc[0] = BigRational::one();
        let mut linear = vec![BigRational::zero(); n + 1];
        for (i, c) in self.values.iter().enumerate() {
            let d = self.table.degree_of(i);
            if d > n || c.is_zero() {
                continue;
            }
            if 2 * d > n {
                linear[d] += c;
                continue;
            }
            // Multiply by 1 + c u^d + c^2 u^2d + ... in place, top down.
            let mut powers = vec![BigRational::one()];
            for k in 1..=n / d {
                let next = &powers[k - 1] * c;
                powers.push(next);
            }
            for deg in (0..=n).rev() {
                let mut s = BigRational::zero();
                for k in 1..=deg / d {
                    if !acc[deg - k * d].is_zero() {
                        s += &acc[deg - k * d] * &powers[k];
                    }
                }
                acc[deg] += s;
            }
        }
        // Primes of degree > n/2 contribute only their linear terms.
        let mut out = acc.clone();
        for (d, c) in linear.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..=n - d {
                out[i + d] += &acc[i] * c;
            }
        }
        out
    }

    /// Scale D with D * c(P) integral for all P, and the scaled integers.
    fn scaled(&self) -> (BigInt, Vec<i128>) {
        let d = self.values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints = self
            .values
            .iter()
            .map(|v| {
                let x = (v * BigRational::from_integer(d.clone())).to_integer();
                i128::try_from(x).expect("scaled coefficient fits i128")
            })
            .collect();
        (d, ints)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Form {
    Newform,
    Oldform,
}

/// Which closed form the enumerated series equals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaLVerdict {
    /// Only the form with the 1/zeta(2s - nu) factor matches.
    WithZetaDenominator,
    /// Only the form without any denominator matches.
    WithoutDenominator,
    Both,
    Neither,
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaLReport {
    pub form: Form,
    pub q: u32,
    pub n: usize,
    pub level: Option<String>,
    pub verdict: SigmaLVerdict,
    pub first_mismatch_with_zeta: Option<(usize, usize)>,
    pub first_mismatch_without: Option<(usize, usize)>,
}

fn first_mismatch(a: &BiSeries, b: &BiSeries) -> Option<(usize, usize)> {
    for i in 0..=a.n {
        for j in 0..=a.n {
            if a.c[i][j] != b.c[i][j] {
                return Some((i, j));
            }
        }
    }
    None
}

fn checked(x: Option<i128>) -> Result<i128> {
    x.ok_or_else(|| Error::Resource("integer overflow in scaled coefficient sum".into()))
}

/// Sum over monic Q, deg Q <= n, of c(Q) sigma_nu(Q) u^deg Q, enumerated through
/// factorizations. `extra` adds one to the exponent of that prime inside sigma
/// only, and `shift` offsets the u-degree; both serve the oldform sum.
fn enumerate_lhs(coeffs: &SyntheticMultiplicative, n: usize, extra: Option<usize>, shift: usize) -> Result<BiSeries> {
    let table = coeffs.table();
    let (scale, ints) = coeffs.scaled();
    let max_q = n - shift;
    let scale_i = i128::try_from(scale.clone()).map_err(|_| Error::Resource("scale too large".into()))?;
    let pow_scale: Vec<i128> = (0..=max_q)
        .scan(1i128, |acc, k| {
            let cur = *acc;
            if k < max_q {
                *acc = acc.saturating_mul(scale_i);
            }
            Some(cur)
        })
        .collect();
    let mut acc = vec![vec![0i128; n + 1]; n + 1];
    let mut err = None;
    table.for_each_factorization(max_q, |deg, fx| {
        if err.is_some() {
            return;
        }
        let mut run = || -> Result<()> {
            let mut c = 1i128;
            let mut omega = 0usize;
            for &(i, e) in fx {
                for _ in 0..e {
                    c = checked(c.checked_mul(ints[i]))?;
                }
                omega += e as usize;
            }
            if c == 0 {
                return Ok(());
            }
            c = checked(c.checked_mul(pow_scale[max_q - omega.min(max_q)]))?;
            // sigma_nu as a polynomial in v.
            let mut sig = vec![1i128];
            let mut extra_seen = false;
            for &(i, e) in fx {
                let e = if Some(i) == extra {
                    extra_seen = true;
                    e + 1
                } else {
                    e
                };
                sig = mul_divisor_factor(&sig, table.degree_of(i), e);
            }
            if let (Some(i), false) = (extra, extra_seen) {
                sig = mul_divisor_factor(&sig, table.degree_of(i), 1);
            }
            for (j, &sj) in sig.iter().enumerate() {
                if j <= n && sj != 0 {
                    let cell = &mut acc[deg + shift][j];
                    *cell = checked(cell.checked_add(checked(c.checked_mul(sj))?))?;
                }
            }
            Ok(())
        };
        if let Err(e) = run() {
            err = Some(e);
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let denom = BigRational::from_integer(num_traits::pow::Pow::pow(&scale, max_q as u32));
    let mut out = BiSeries::zero(n);
    for i in 0..=n {
        for j in 0..=n {
            if acc[i][j] != 0 {
                out.c[i][j] = BigRational::from_integer(BigInt::from(acc[i][j])) / &denom;
            }
        }
    }
    Ok(out)
}

/// sig * (1 + v^d + ... + v^(e d)).
fn mul_divisor_factor(sig: &[i128], d: usize, e: u32) -> Vec<i128> {
    let mut out = vec![0i128; sig.len() + d * e as usize];
    for (j, &s) in sig.iter().enumerate() {
        for k in 0..=e as usize {
            out[j + k * d] += s;
        }
    }
    out
}

/// Compares the enumerated sum with the two candidate closed forms.
///
/// Newform: sum c(Q) sigma_nu(Q) |Q|^-s against L(s)L(s-nu)/zeta(2s-nu) and
/// L(s)L(s-nu). Oldform (coefficients sqrt|A| c*(Q/A) for A | Q, 0 otherwise,
/// divided through by sqrt|A| c*(1)) against
/// |A|^-s (1 + |A|^nu - c*(A)|A|^(nu-s)) / (1 - |A|^(nu-2s)) L L / zeta(2s-nu)
/// and the same without the two denominators.
pub fn verify_sigma_l_series(coeffs: &SyntheticMultiplicative, n: usize, form: Form, level: Option<&Poly>) -> Result<SigmaLReport> {
    let table = coeffs.table();
    if table.max_degree() < n {
        return domain("coefficients must be defined on all primes of degree <= n");
    }
    let q = table.q();
    let l = coeffs.l_series(n);
    let lu = BiSeries::from_univariate(n, &l, 0);
    let luv = BiSeries::from_univariate(n, &l, 1);
    let ll = lu.mul(&luv);
    let inv_zeta = BiSeries::one(n).sub(&BiSeries::term(n, BigRational::from_integer(BigInt::from(q)), 2, 1));
    let (lhs, with_zeta, without) = match form {
        Form::Newform => {
            let lhs = enumerate_lhs(coeffs, n, None, 0)?;
            (lhs, ll.mul(&inv_zeta), ll)
        }
        Form::Oldform => {
            let a = level.ok_or_else(|| Error::Domain("oldform needs the level A".into()))?;
            let ai = table
                .polys()
                .iter()
                .position(|p| p == a)
                .ok_or_else(|| Error::Domain(format!("level {a} must be a tabulated prime")))?;
            let da = a.degree().unwrap();
            if da > n {
                return domain("deg A exceeds the truncation");
            }
            let lhs = enumerate_lhs(coeffs, n, Some(ai), da)?;
            let ca = coeffs.prime_value(ai).clone();
            let one = BigRational::one();
            let bracket = BiSeries::one(n)
                .add(&BiSeries::term(n, one.clone(), 0, da))
                .sub(&BiSeries::term(n, ca, da, da));
            let pre = BiSeries::term(n, one.clone(), da, 0).mul(&bracket);
            let den = BiSeries::one(n).sub(&BiSeries::term(n, one, 2 * da, da)).inverse()?;
            let without = pre.mul(&ll);
            let with_zeta = pre.mul(&den).mul(&ll).mul(&inv_zeta);
            (lhs, with_zeta, without)
        }
    };
    let m1 = first_mismatch(&lhs, &with_zeta);
    let m2 = first_mismatch(&lhs, &without);
    let verdict = match (m1.is_none(), m2.is_none()) {
        (true, true) => SigmaLVerdict::Both,
        (true, false) => SigmaLVerdict::WithZetaDenominator,
        (false, true) => SigmaLVerdict::WithoutDenominator,
        (false, false) => SigmaLVerdict::Neither,
    };
    Ok(SigmaLReport {
        form,
        q,
        n,
        level: level.map(|a| a.to_string()),
        verdict,
        first_mismatch_with_zeta: m1,
        first_mismatch_without: m2,
    })
}

/// Per-prime oracle for c = 1 on every prime: each Euler factor is
/// sum_k sigma_nu(P^k) x^k = 1/((1 - x)(1 - v^d x)), x = u^d.
pub fn trivial_character_series(q: u32, n: usize) -> BiSeries {
    let mut acc = BiSeries::one(n);
    for d in 1..=n {
        let count = crate::ff::count_irreducibles(q, d);
        let x = BiSeries::term(n, BigRational::one(), d, 0);
        let y = BiSeries::term(n, BigRational::one(), d, d);
        let factor = BiSeries::one(n)
            .sub(&x)
            .mul(&BiSeries::one(n).sub(&y))
            .inverse()
            .expect("unit constant term");
        for _ in 0..count {
            acc = acc.mul(&factor);
        }
    }
    acc
}

impl BiSeries {
    /// Largest absolute coefficient, for diagnostics.
    pub fn max_abs(&self) -> BigRational {
        self.c.iter().flatten().map(|x| x.abs()).fold(BigRational::zero(), |a, b| if b > a { b } else { a })
    }
}
