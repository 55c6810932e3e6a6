use super::field as fp;
use super::norm::Norm;
use super::poly::Poly;
use crate::error::{domain, Error, Result};
use std::fmt;

/// Precision value marking an exactly known element.
pub const EXACT: i64 = i64::MAX;

fn padd(a: i64, b: i64) -> i64 {
    if a == EXACT || b == EXACT {
        EXACT
    } else {
        a + b
    }
}

/// A truncated Laurent series in T^-1, an element of F_q((T^-1)).
///
/// `coeffs[i]` is the coefficient of `T^-(val+i)`. Precision is absolute:
/// every coefficient of `T^-k` with `k < prec` is known, the rest are not.
/// Results of arithmetic take the smallest precision the inputs justify.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent {
    q: u32,
    val: i64,
    coeffs: Vec<u32>,
    prec: i64,
}

impl Laurent {
    /// Builds from `(coefficient, k)` pairs meaning `c * T^-k`; terms at or past
    /// `prec` are dropped.
    pub fn from_terms(q: u32, terms: &[(i64, i64)], prec: i64) -> Laurent {
        let kept: Vec<(u32, i64)> = terms
            .iter()
            .filter(|&&(_, k)| k < prec)
            .map(|&(c, k)| (fp::reduce(q, c), k))
            .collect();
        Laurent::assemble(q, &kept, prec)
    }

    fn assemble(q: u32, terms: &[(u32, i64)], prec: i64) -> Laurent {
        if terms.is_empty() {
            return Laurent::zero(q, prec);
        }
        let lo = terms.iter().map(|t| t.1).min().unwrap();
        let hi = terms.iter().map(|t| t.1).max().unwrap();
        let mut v = vec![0u32; (hi - lo + 1) as usize];
        for &(c, k) in terms {
            let i = (k - lo) as usize;
            v[i] = fp::add(q, v[i], c);
        }
        Laurent::normalize(q, lo, v, prec)
    }

    fn normalize(q: u32, val: i64, mut coeffs: Vec<u32>, prec: i64) -> Laurent {
        if prec != EXACT {
            let keep = (prec - val).max(0) as usize;
            coeffs.truncate(keep);
        }
        let lead = coeffs.iter().position(|&c| c != 0);
        match lead {
            None => Laurent::zero(q, prec),
            Some(z) => {
                coeffs.drain(..z);
                while coeffs.last() == Some(&0) {
                    coeffs.pop();
                }
                Laurent { q, val: val + z as i64, coeffs, prec }
            }
        }
    }

    pub fn zero(q: u32, prec: i64) -> Laurent {
        Laurent { q, val: 0, coeffs: Vec::new(), prec }
    }

    pub fn one(q: u32) -> Laurent {
        Laurent::from_poly(&Poly::one(q))
    }

    /// `c * T^e` exactly.
    pub fn monomial(q: u32, c: i64, e: i64) -> Laurent {
        Laurent::from_terms(q, &[(c, -e)], EXACT)
    }

    /// Exact embedding of a polynomial.
    pub fn from_poly(p: &Poly) -> Laurent {
        let q = p.q();
        match p.degree() {
            None => Laurent::zero(q, EXACT),
            Some(d) => {
                Laurent::normalize(q, -(d as i64), p.coeffs().iter().rev().copied().collect(), EXACT)
            }
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.prec == EXACT
    }

    /// Absolute precision, `None` when exact.
    pub fn precision(&self) -> Option<i64> {
        (self.prec != EXACT).then_some(self.prec)
    }

    /// Raw precision, [`EXACT`] for exact elements.
    pub fn prec_raw(&self) -> i64 {
        self.prec
    }

    /// Exponent of T^-1 of the leading term, `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    pub fn norm(&self) -> Norm {
        match self.valuation() {
            None => Norm::Zero,
            Some(v) => Norm::QPow(-v),
        }
    }

    /// Coefficient of `T^-k`; errors when `k` lies past the known precision.
    pub fn coeff_neg(&self, k: i64) -> Result<u32> {
        if k >= self.prec {
            return Err(Error::Precision { needed: k, available: self.prec });
        }
        if self.is_zero() || k < self.val {
            return Ok(0);
        }
        Ok(self.coeffs.get((k - self.val) as usize).copied().unwrap_or(0))
    }

    /// Coefficient of `T^j`.
    pub fn coeff_t(&self, j: i64) -> Result<u32> {
        self.coeff_neg(-j)
    }

    /// Nonzero terms as `(coefficient, k)` meaning `c * T^-k`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (c, self.val + i as i64))
    }

    /// Lowers the precision to `prec` (never raises it).
    pub fn truncate(&self, prec: i64) -> Laurent {
        let p = prec.min(self.prec);
        Laurent::normalize(self.q, self.val, self.coeffs.clone(), p)
    }

    /// Keeps only the terms `T^-k` with `k < bound` and declares the result
    /// exact: the canonical representative modulo `T^-bound * F_q[[T^-1]]`.
    pub fn canonical_below(&self, bound: i64) -> Result<Laurent> {
        if bound > self.prec {
            return Err(Error::Precision { needed: bound - 1, available: self.prec });
        }
        let t = self.truncate(bound);
        Ok(Laurent { prec: EXACT, ..t })
    }

    pub fn neg(&self) -> Laurent {
        let q = self.q;
        Laurent { coeffs: self.coeffs.iter().map(|&c| fp::neg(q, c)).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: u32) -> Laurent {
        let q = self.q;
        let v = self.coeffs.iter().map(|&a| fp::mul(q, a, c % q)).collect();
        Laurent::normalize(q, self.val, v, self.prec)
    }

    fn add_signed(&self, o: &Laurent, negate: bool) -> Laurent {
        debug_assert_eq!(self.q, o.q);
        let q = self.q;
        let prec = self.prec.min(o.prec);
        let mut terms: Vec<(u32, i64)> = self.terms().filter(|t| t.1 < prec).collect();
        terms.extend(
            o.terms()
                .filter(|t| t.1 < prec)
                .map(|(c, k)| (if negate { fp::neg(q, c) } else { c }, k)),
        );
        Laurent::assemble(q, &terms, prec)
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        self.add_signed(o, false)
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        self.add_signed(o, true)
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        debug_assert_eq!(self.q, o.q);
        let q = self.q;
        if (self.is_zero() && self.is_exact()) || (o.is_zero() && o.is_exact()) {
            return Laurent::zero(q, EXACT);
        }
        let va = if self.is_zero() { self.prec } else { self.val };
        let vb = if o.is_zero() { o.prec } else { o.val };
        let prec = padd(va, o.prec).min(padd(vb, self.prec));
        if self.is_zero() || o.is_zero() {
            return Laurent::zero(q, prec);
        }
        let base = self.val + o.val;
        let full = self.coeffs.len() + o.coeffs.len() - 1;
        let len = if prec == EXACT { full } else { full.min((prec - base).max(0) as usize) };
        let qq = q as u64;
        let mut acc = vec![0u64; len];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 || i >= len {
                continue;
            }
            for (j, &y) in o.coeffs.iter().enumerate().take(len - i) {
                acc[i + j] = (acc[i + j] + x as u64 * y as u64) % qq;
            }
        }
        Laurent::normalize(q, base, acc.into_iter().map(|c| c as u32).collect(), prec)
    }

    pub fn mul_poly(&self, p: &Poly) -> Laurent {
        self.mul(&Laurent::from_poly(p))
    }

    /// Multiplicative inverse. The result precision is what the input supports,
    /// capped at `cap`; an exact non-monomial input needs a finite `cap`.
    pub fn inverse(&self, cap: i64) -> Result<Laurent> {
        let q = self.q;
        if self.is_zero() {
            return domain("inversion of zero Laurent series");
        }
        if self.is_exact() && self.coeffs.len() == 1 {
            let c = fp::inv(q, self.coeffs[0]);
            return Ok(Laurent { q, val: -self.val, coeffs: vec![c], prec: EXACT });
        }
        let natural = if self.is_exact() { EXACT } else { self.prec - 2 * self.val };
        let target = natural.min(cap);
        if target == EXACT {
            return domain("exact inverse of a non-monomial needs a finite precision cap");
        }
        let n = (target + self.val).max(0) as usize;
        let c0inv = fp::inv(q, self.coeffs[0]);
        let mut b = vec![0u32; n];
        for k in 0..n {
            let mut s = if k == 0 { 1 } else { 0 };
            for j in 1..=k.min(self.coeffs.len() - 1) {
                s = fp::sub(q, s, fp::mul(q, self.coeffs[j], b[k - j]));
            }
            b[k] = fp::mul(q, s, c0inv);
        }
        Ok(Laurent::normalize(q, -self.val, b, target))
    }

    /// `self / o` with result precision capped at `prec`.
    pub fn div_to(&self, o: &Laurent, prec: i64) -> Result<Laurent> {
        let shift = if self.is_zero() { 0 } else { self.val };
        let inv = o.inverse(prec.saturating_sub(shift))?;
        Ok(self.mul(&inv).truncate(prec))
    }

    /// Terms with non-negative powers of T. Needs every such coefficient known.
    pub fn polynomial_part(&self) -> Result<Poly> {
        if self.prec < 1 {
            return Err(Error::Precision { needed: 0, available: self.prec });
        }
        let terms: Vec<(u32, i64)> = self.terms().filter(|t| t.1 <= 0).collect();
        let deg = terms.iter().map(|t| -t.1).max().unwrap_or(0) as usize;
        let mut v = vec![0u32; deg + 1];
        for (c, k) in terms {
            v[(-k) as usize] = c;
        }
        Ok(Poly::new(self.q, v))
    }

    /// Representative of `x mod F_q[T]` supported on strictly negative powers.
    pub fn fractional_part(&self) -> Laurent {
        let terms: Vec<(u32, i64)> = self.terms().filter(|t| t.1 >= 1).collect();
        Laurent::assemble(self.q, &terms, self.prec)
    }

    /// Parses `T^-1+2*T^-3 (prec 12)`; without the suffix the value is exact.
    pub fn parse(q: u32, s: &str) -> Result<Laurent> {
        let s = s.trim();
        let (body, prec) = match s.find('(') {
            Some(i) => {
                let tail = s[i..].trim();
                let inner = tail
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .and_then(|t| t.trim().strip_prefix("prec"))
                    .ok_or_else(|| Error::Parse(format!("bad precision suffix in `{s}`")))?;
                let p: i64 = inner
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad precision in `{s}`")))?;
                (&s[..i], p)
            }
            None => (s, EXACT),
        };
        let terms = super::parse::parse_terms(q, body)?;
        let pairs: Vec<(i64, i64)> = terms.iter().map(|&(c, e)| (c as i64, -e)).collect();
        Ok(Laurent::from_terms(q, &pairs, prec))
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(u32, i64)> = self.terms().map(|(c, k)| (c, -k)).collect();
        f.write_str(&super::parse::format_terms(&terms))?;
        if self.prec != EXACT {
            write!(f, " (prec {})", self.prec)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> Laurent {
        Laurent::parse(5, s).unwrap()
    }

    #[test]
    fn invert_t_is_exact() {
        let t = Laurent::from_poly(&Poly::t(5));
        let inv = t.inverse(EXACT).unwrap();
        assert!(inv.is_exact());
        assert_eq!(inv, l("T^-1"));
    }

    #[test]
    fn invert_t_plus_one() {
        let x = Laurent::from_poly(&Poly::parse(5, "T+1").unwrap());
        let inv = x.inverse(12).unwrap();
        assert_eq!(inv.precision(), Some(12));
        for k in 1..12 {
            let expect = if k % 2 == 1 { 1 } else { 4 };
            assert_eq!(inv.coeff_neg(k).unwrap(), expect);
        }
        let one = x.mul(&inv);
        assert_eq!(one, Laurent::one(5).truncate(one.prec_raw()));
        assert_eq!(one.precision(), Some(11));
        assert!(inv.coeff_neg(12).is_err());
    }

    #[test]
    fn split_parts() {
        let x = l("T^2+T^-1");
        assert_eq!(x.fractional_part(), l("T^-1"));
        assert_eq!(x.polynomial_part().unwrap(), Poly::parse(5, "T^2").unwrap());
    }

    #[test]
    fn norms() {
        assert_eq!(l("T^-1+T^-3").norm(), Norm::QPow(-1));
        let x = Laurent::from_poly(&Poly::parse(5, "T+1").unwrap());
        let y = Laurent::from_poly(&Poly::parse(5, "T^2").unwrap());
        assert_eq!(x.div_to(&y, 10).unwrap().norm(), Norm::QPow(-1));
        assert_eq!(Laurent::zero(5, EXACT).norm(), Norm::Zero);
    }

    #[test]
    fn display_round_trip() {
        let x = l("T^-1+2*T^-3 (prec 12)");
        assert_eq!(x.to_string(), "T^-1+2*T^-3 (prec 12)");
        assert_eq!(l(&x.to_string()), x);
        assert_eq!(l("3*T+1").to_string(), "3*T+1");
    }

    #[test]
    fn precision_min_rule() {
        let a = l("T^-1 (prec 5)");
        let b = l("T^-2 (prec 9)");
        assert_eq!(a.add(&b).precision(), Some(5));
        // |a| = q^-1, |b| = q^-2: product known to min(1 + 9, 2 + 5).
        assert_eq!(a.mul(&b).precision(), Some(7));
        assert!(Laurent::zero(5, EXACT).inverse(5).is_err());
    }
}
