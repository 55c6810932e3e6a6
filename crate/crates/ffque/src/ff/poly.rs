use super::field as fp;
use crate::error::{domain, Error, Result};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A polynomial over F_q, coefficients ascending by power of T, no trailing zeros.
///
/// The zero polynomial has `degree() == None`, standing for minus infinity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    q: u32,
    coeffs: Vec<u32>,
}

impl Poly {
    /// Builds from residues; entries are reduced mod q and trailing zeros trimmed.
    pub fn new(q: u32, coeffs: Vec<u32>) -> Self {
        let mut p = Poly { q, coeffs };
        for c in p.coeffs.iter_mut() {
            *c %= q;
        }
        p.trim();
        p
    }

    pub fn from_i64(q: u32, coeffs: &[i64]) -> Self {
        Poly::new(q, coeffs.iter().map(|&c| fp::reduce(q, c)).collect())
    }

    pub fn zero(q: u32) -> Self {
        Poly { q, coeffs: Vec::new() }
    }

    pub fn one(q: u32) -> Self {
        Poly { q, coeffs: vec![1] }
    }

    pub fn constant(q: u32, c: i64) -> Self {
        Poly::from_i64(q, &[c])
    }

    /// The indeterminate T.
    pub fn t(q: u32) -> Self {
        Poly { q, coeffs: vec![0, 1] }
    }

    /// c * T^k.
    pub fn monomial(q: u32, c: i64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = fp::reduce(q, c);
        Poly::new(q, v)
    }

    /// Decodes the base-q integer `index` (constant term least significant).
    pub fn from_index(q: u32, mut index: u64) -> Self {
        let mut v = Vec::new();
        while index > 0 {
            v.push((index % q as u64) as u32);
            index /= q as u64;
        }
        Poly::new(q, v)
    }

    /// Base-q encoding, inverse of [`Poly::from_index`].
    pub fn index(&self) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.q as u64 + c as u64)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of T^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `i64::MIN`.
    pub fn deg_i64(&self) -> i64 {
        self.degree().map_or(i64::MIN, |d| d as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient, zero for the zero polynomial.
    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn scale(&self, c: u32) -> Poly {
        let q = self.q;
        Poly::new(q, self.coeffs.iter().map(|&a| fp::mul(q, a, c % q)).collect())
    }

    /// The monic associate; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&l) => self.scale(fp::inv(self.q, l)),
        }
    }

    /// Multiply by T^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        Poly { q: self.q, coeffs: v }
    }

    pub fn eval(&self, x: u32) -> u32 {
        let q = self.q;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| fp::add(q, fp::mul(q, acc, x), c))
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut r = Poly::one(self.q);
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        r
    }

    /// Euclidean division; `b` must be nonzero.
    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly)> {
        let Some(db) = b.degree() else {
            return domain("division by the zero polynomial");
        };
        let q = self.q;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly::zero(q), self.clone()));
        }
        let lb_inv = fp::inv(q, b.leading());
        let mut quot = vec![0u32; r.len() - db];
        for i in (0..quot.len()).rev() {
            let c = fp::mul(q, r[i + db], lb_inv);
            quot[i] = c;
            if c != 0 {
                for (j, &bc) in b.coeffs.iter().enumerate() {
                    r[i + j] = fp::sub(q, r[i + j], fp::mul(q, c, bc));
                }
            }
        }
        r.truncate(db);
        Ok((Poly::new(q, quot), Poly::new(q, r)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divmod(b)?.1)
    }

    /// Quotient when `b` divides `self`, otherwise a domain error.
    pub fn div_exact(&self, b: &Poly) -> Result<Poly> {
        let (quot, r) = self.divmod(b)?;
        if !r.is_zero() {
            return domain(format!("{b} does not divide {self}"));
        }
        Ok(quot)
    }

    /// True when `self` divides `b`. Zero divides only zero.
    pub fn divides(&self, b: &Poly) -> bool {
        if self.is_zero() {
            return b.is_zero();
        }
        b.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic generator of the ideal (a, b); gcd(0, 0) = 0.
    pub fn gcd(&self, b: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, u, v) with u*self + v*b = g, g monic gcd.
    pub fn xgcd(&self, b: &Poly) -> (Poly, Poly, Poly) {
        let q = self.q;
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(q), Poly::zero(q));
        let (mut t0, mut t1) = (Poly::zero(q), Poly::one(q));
        while !r1.is_zero() {
            let (quo, r) = r0.divmod(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&quo * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&quo * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let l = fp::inv(q, r0.leading());
        (r0.scale(l), s0.scale(l), t0.scale(l))
    }

    /// Exact A-adic valuation of a nonzero polynomial.
    pub fn valuation(&self, a: &Poly) -> Result<u32> {
        if self.is_zero() {
            return domain("valuation of zero is infinite");
        }
        if a.degree().unwrap_or(0) == 0 {
            return domain("valuation at a unit");
        }
        let mut x = self.clone();
        let mut k = 0;
        loop {
            let (quo, r) = x.divmod(a)?;
            if !r.is_zero() {
                return Ok(k);
            }
            x = quo;
            k += 1;
        }
    }

    /// Ascending text form including zero terms, e.g. `1+0*T+3*T^2`.
    pub fn to_ascending_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*T"),
                _ => format!("{c}*T^{i}"),
            })
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Parses ascending or compact text forms; see [`super::parse`].
    pub fn parse(q: u32, s: &str) -> Result<Poly> {
        let terms = super::parse::parse_terms(q, s)?;
        let mut max = 0usize;
        for &(_, e) in &terms {
            if e < 0 {
                return Err(Error::Parse(format!("negative power in polynomial `{s}`")));
            }
            max = max.max(e as usize);
        }
        let mut v = vec![0u32; max + 1];
        for (c, e) in terms {
            v[e as usize] = fp::add(q, v[e as usize], c);
        }
        Ok(Poly::new(q, v))
    }
}

impl fmt::Display for Poly {
    /// Compact descending form, e.g. `T^2+3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(u32, i64)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (c, i as i64))
            .collect();
        f.write_str(&super::parse::format_terms(&terms))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    /// Degree first, then coefficients from the top down; matches enumeration order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

fn add_raw(a: &Poly, b: &Poly, negate_b: bool) -> Poly {
    debug_assert_eq!(a.q, b.q);
    let q = a.q;
    let n = a.coeffs.len().max(b.coeffs.len());
    let v = (0..n)
        .map(|i| {
            let bi = b.coeff(i);
            if negate_b {
                fp::sub(q, a.coeff(i), bi)
            } else {
                fp::add(q, a.coeff(i), bi)
            }
        })
        .collect();
    Poly::new(q, v)
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, b: &Poly) -> Poly {
        add_raw(self, b, false)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, b: &Poly) -> Poly {
        add_raw(self, b, true)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, b: &Poly) -> Poly {
        debug_assert_eq!(self.q, b.q);
        let q = self.q;
        if self.is_zero() || b.is_zero() {
            return Poly::zero(q);
        }
        let qq = q as u64;
        let mut acc = vec![0u64; self.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + x as u64 * y as u64) % qq;
            }
        }
        Poly::new(q, acc.into_iter().map(|c| c as u32).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let q = self.q;
        Poly::new(q, self.coeffs.iter().map(|&c| fp::neg(q, c)).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, b: Poly) -> Poly {
                (&self).$m(&b)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(5, s).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p("T^2-T").gcd(&p("T")), p("T"));
        assert_eq!(p("3*T+1").gcd(&Poly::zero(5)), p("3*T+1").monic());
    }

    #[test]
    fn long_division() {
        let (quo, r) = p("T^3+1").divmod(&p("T+1")).unwrap();
        assert_eq!(quo, p("T^2-T+1"));
        assert!(r.is_zero());
        assert!(p("T").divmod(&Poly::zero(5)).is_err());
    }

    #[test]
    fn xgcd_bezout() {
        let a = p("T^3+2*T+1");
        let b = p("T^2+3");
        let (g, u, v) = a.xgcd(&b);
        assert_eq!(&(&u * &a) + &(&v * &b), g);
        assert!(g.is_monic());
    }

    #[test]
    fn text_forms() {
        let x = p("1+0*T+3*T^2");
        assert_eq!(x.to_ascending_string(), "1+0*T+3*T^2");
        assert_eq!(x.to_string(), "3*T^2+1");
        assert_eq!(p("T^2+3").to_string(), "T^2+3");
        assert_eq!(Poly::zero(5).to_string(), "0");
        assert_eq!(p(&x.to_string()), x);
    }

    #[test]
    fn index_round_trip() {
        for k in 0..200u64 {
            assert_eq!(Poly::from_index(5, k).index(), k);
        }
    }

    #[test]
    fn valuation_counts_powers() {
        let a = p("T+1");
        assert_eq!(a.pow(3).mul(p("T")).valuation(&a).unwrap(), 3);
        assert!(Poly::zero(5).valuation(&a).is_err());
    }
}
