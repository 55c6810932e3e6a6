use crate::error::{Error, Result};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use std::collections::BTreeMap;
use std::fmt;

/// A finitely supported weight `n -> psi(q^n)` on the height lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct TestWeight {
    pub support: BTreeMap<i64, BigRational>,
}

impl TestWeight {
    pub fn delta(n: i64) -> TestWeight {
        TestWeight { support: BTreeMap::from([(n, BigRational::from_integer(1.into()))]) }
    }

    /// Parses `0:1,1:1/2`.
    pub fn parse(s: &str) -> Result<TestWeight> {
        let mut support = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (n, v) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected n:value in `{part}`")))?;
            let n: i64 = n.trim().parse().map_err(|_| Error::Parse(format!("bad height `{n}`")))?;
            let v: BigRational = v.trim().parse().map_err(|_| Error::Parse(format!("bad weight value `{v}`")))?;
            if support.insert(n, v).is_some() {
                return Err(Error::Parse(format!("height {n} listed twice")));
            }
        }
        if support.is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        Ok(TestWeight { support })
    }

    pub fn values(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.support.iter().map(|(&n, v)| (n, v.to_f64().unwrap_or(f64::NAN)))
    }

    /// `H(s) = sum psi(q^n) q^(-ns)`.
    pub fn mellin(&self, q: u32, s: Complex64) -> Complex64 {
        let lq = (q as f64).ln();
        self.values().map(|(n, v)| v * (-s * lq * n as f64).exp()).sum()
    }

    /// `H(0)`, exactly.
    pub fn mass(&self) -> BigRational {
        self.support.values().cloned().sum()
    }

    /// Recovers `psi(q^n)` from `log q * integral of H(s) q^(ns) ds / 2 pi i` over
    /// the period segment of the imaginary axis, by the `points`-node trapezoid rule
    /// (exact once `points` exceeds the spread of the support plus `|n|`).
    pub fn mellin_inversion(&self, q: u32, n: i64, points: usize) -> f64 {
        let lq = (q as f64).ln();
        let period = 2.0 * std::f64::consts::PI / lq;
        let h = period / points as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..points {
            let y = -period / 2.0 + k as f64 * h;
            let s = Complex64::new(0.0, y);
            acc += self.mellin(q, s) * (s * lq * n as f64).exp();
        }
        // ds = i dy, and log q / (2 pi i) * i = log q / (2 pi).
        (acc * h * lq / (2.0 * std::f64::consts::PI)).re
    }
}

impl fmt::Display for TestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.support.iter().map(|(n, v)| format!("{n}:{v}")).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mellin_examples() {
        let d = TestWeight::delta(0);
        assert!((d.mellin(5, Complex64::new(0.3, 2.0)) - 1.0).norm() < 1e-15);
        let two = TestWeight::parse("0:1, 1:1").unwrap();
        assert!((two.mellin(5, Complex64::new(0.0, 0.0)).re - 2.0).abs() < 1e-15);
        assert_eq!(two.mass(), BigRational::from_integer(2.into()));
        for n in -2..=3 {
            let want = if n == 0 || n == 1 { 1.0 } else { 0.0 };
            assert!((two.mellin_inversion(5, n, 16) - want).abs() < 1e-12);
        }
        assert_eq!(TestWeight::parse(&two.to_string()).unwrap(), two);
        assert!(TestWeight::parse("0:1,0:2").is_err());
        assert!(TestWeight::parse("x").is_err());
    }
}
