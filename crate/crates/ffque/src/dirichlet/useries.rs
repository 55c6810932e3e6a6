use crate::error::{domain, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// A power series in one formal variable, truncated after degree `trunc`,
/// with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct USeries {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl USeries {
    pub fn zero(trunc: usize) -> USeries {
        USeries { coeffs: vec![BigRational::zero(); trunc + 1] }
    }

    pub fn one(trunc: usize) -> USeries {
        USeries::monomial(trunc, BigRational::one(), 0)
    }

    /// Pads with zeros or drops terms past `trunc`.
    pub fn from_coeffs(trunc: usize, mut coeffs: Vec<BigRational>) -> USeries {
        coeffs.resize(trunc + 1, BigRational::zero());
        USeries { coeffs }
    }

    pub fn from_ints(trunc: usize, coeffs: &[i64]) -> USeries {
        USeries::from_coeffs(trunc, coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn monomial(trunc: usize, c: BigRational, k: usize) -> USeries {
        let mut s = USeries::zero(trunc);
        if k <= trunc {
            s.coeffs[k] = c;
        }
        s
    }

    /// 1 / (1 - a z^k).
    pub fn geometric(trunc: usize, a: &BigRational, k: usize) -> USeries {
        assert!(k > 0);
        let mut s = USeries::zero(trunc);
        let mut p = BigRational::one();
        for j in (0..=trunc).step_by(k) {
            s.coeffs[j] = p.clone();
            p *= a;
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn check(&self, o: &USeries) {
        assert_eq!(self.trunc(), o.trunc(), "truncation orders differ");
    }

    pub fn add(&self, o: &USeries) -> USeries {
        self.check(o);
        USeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &USeries) -> USeries {
        self.check(o);
        USeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> USeries {
        USeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, o: &USeries) -> USeries {
        self.check(o);
        let n = self.trunc();
        let mut out = USeries::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<USeries> {
        if self.coeffs[0].is_zero() {
            return domain("series inverse needs a nonzero constant term");
        }
        let n = self.trunc();
        let c0 = self.coeffs[0].recip();
        let mut b = vec![BigRational::zero(); n + 1];
        b[0] = c0.clone();
        for k in 1..=n {
            let mut s = BigRational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += &self.coeffs[j] * &b[k - j];
                }
            }
            b[k] = -s * &c0;
        }
        Ok(USeries { coeffs: b })
    }

    pub fn div(&self, o: &USeries) -> Result<USeries> {
        Ok(self.mul(&o.inverse()?))
    }

    /// f(z^k).
    pub fn subst_power(&self, k: usize) -> USeries {
        let n = self.trunc();
        let mut out = USeries::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * k > n {
                break;
            }
            out.coeffs[i * k] = c.clone();
        }
        out
    }
}

impl fmt::Display for USeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})z^{k}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", parts.join(" + "))?;
        }
        write!(f, " + O(z^{})", self.trunc() + 1)
    }
}

/// 1/(1 - q^(1-s)) = sum q^d u^d.
pub fn zeta_series(q: u32, trunc: usize) -> USeries {
    USeries::geometric(trunc, &rat(q as i64), 1)
}

/// The same series from its defining sum: the count of monic polynomials per degree.
pub fn zeta_series_by_count(q: u32, trunc: usize) -> USeries {
    let counts: Vec<i64> = (0..=trunc)
        .map(|d| crate::ff::enumerate_polys(q, d, true).count() as i64)
        .collect();
    USeries::from_ints(trunc, &counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_examples() {
        let z = zeta_series(5, 2);
        assert_eq!(z, USeries::from_ints(2, &[1, 5, 25]));
        assert_eq!(zeta_series_by_count(5, 4), zeta_series(5, 4));
        let one_minus = USeries::from_ints(6, &[1, -5]);
        assert_eq!(zeta_series(5, 6).mul(&one_minus), USeries::one(6));
    }

    #[test]
    fn inverse_of_zero_constant_fails() {
        assert!(USeries::from_ints(3, &[0, 1]).inverse().is_err());
    }

    #[test]
    fn subst() {
        let g = USeries::geometric(6, &rat(2), 1).subst_power(3);
        assert_eq!(g, USeries::from_ints(6, &[1, 0, 0, 2, 0, 0, 4]));
        assert_eq!(g, USeries::geometric(6, &rat(2), 3));
    }
}
