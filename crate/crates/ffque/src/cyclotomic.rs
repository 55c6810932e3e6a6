use num_complex::Complex64;
use num_integer::Integer;
use std::fmt;

/// An element of Z[zeta_q] on the basis 1, zeta, ..., zeta^(q-2).
///
/// Reduction uses 1 + zeta + ... + zeta^(q-1) = 0, so the representation is
/// canonical and equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    q: u32,
    coeffs: Vec<i64>,
}

impl CycInt {
    /// Builds `sum_k counts[k] zeta^k` from a full length-q vector.
    pub fn from_powers(q: u32, counts: &[i64]) -> CycInt {
        assert_eq!(counts.len(), q as usize, "need one count per power of zeta");
        let top = counts[q as usize - 1];
        CycInt { q, coeffs: counts[..q as usize - 1].iter().map(|&c| c - top).collect() }
    }

    pub fn zero(q: u32) -> CycInt {
        CycInt { q, coeffs: vec![0; q as usize - 1] }
    }

    pub fn from_int(q: u32, n: i64) -> CycInt {
        let mut z = CycInt::zero(q);
        z.coeffs[0] = n;
        z
    }

    pub fn one(q: u32) -> CycInt {
        CycInt::from_int(q, 1)
    }

    /// zeta^k for any integer k.
    pub fn zeta_pow(q: u32, k: i64) -> CycInt {
        let mut v = vec![0i64; q as usize];
        v[k.rem_euclid(q as i64) as usize] = 1;
        CycInt::from_powers(q, &v)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    fn full(&self) -> Vec<i64> {
        let mut v = self.coeffs.clone();
        v.push(0);
        v
    }

    pub fn add(&self, o: &CycInt) -> CycInt {
        CycInt { q: self.q, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &CycInt) -> CycInt {
        CycInt { q: self.q, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> CycInt {
        CycInt { q: self.q, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, n: i64) -> CycInt {
        CycInt { q: self.q, coeffs: self.coeffs.iter().map(|a| a * n).collect() }
    }

    pub fn mul(&self, o: &CycInt) -> CycInt {
        let q = self.q as usize;
        let mut v = vec![0i64; q];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                v[(i + j) % q] += a * b;
            }
        }
        CycInt::from_powers(self.q, &v)
    }

    /// Complex conjugation, zeta -> zeta^-1.
    pub fn conj(&self) -> CycInt {
        let q = self.q as usize;
        let f = self.full();
        let v: Vec<i64> = (0..q).map(|k| f[(q - k) % q]).collect();
        CycInt::from_powers(self.q, &v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The rational integer this element equals, if it lies in Z.
    pub fn to_integer(&self) -> Option<i64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    pub fn to_complex(&self) -> Complex64 {
        let w = 2.0 * std::f64::consts::PI / self.q as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| Complex64::from_polar(c as f64, w * k as f64))
            .sum()
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.to_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let body = match (k, mag) {
                (0, m) => format!("{m}"),
                (1, 1) => "z".to_string(),
                (1, m) => format!("{m}z"),
                (k, 1) => format!("z^{k}"),
                (k, m) => format!("{m}z^{k}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

/// `num / den` with `num` in Z[zeta_q]; the value type of exact averages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycRational {
    pub num: CycInt,
    pub den: u64,
}

impl CycRational {
    /// Reduces by the content gcd.
    pub fn new(num: CycInt, den: u64) -> CycRational {
        let g = num.coeffs.iter().fold(den as i64, |g, &c| g.gcd(&c));
        let g = g.max(1);
        let coeffs = num.coeffs.iter().map(|c| c / g).collect();
        CycRational { num: CycInt { q: num.q, coeffs }, den: den / g as u64 }
    }

    /// The exact value when it is a rational integer.
    pub fn to_integer(&self) -> Option<i64> {
        if self.den != 1 {
            return None;
        }
        self.num.to_integer()
    }

    pub fn to_complex(&self) -> Complex64 {
        self.num.to_complex() / self.den as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_sum_vanishes() {
        let mut s = CycInt::zero(5);
        for k in 0..5 {
            s = s.add(&CycInt::zeta_pow(5, k));
        }
        assert!(s.is_zero());
    }

    #[test]
    fn conj_and_norm() {
        let z = CycInt::zeta_pow(5, 2);
        assert_eq!(z.mul(&z.conj()), CycInt::one(5));
        assert_eq!(CycInt::zeta_pow(5, 4), CycInt::zeta_pow(5, -1));
        let c = z.to_complex();
        assert!((c.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn integer_detection() {
        // zeta + zeta^4 + zeta^2 + zeta^3 = -1
        let s = (1..5).map(|k| CycInt::zeta_pow(5, k)).fold(CycInt::zero(5), |a, b| a.add(&b));
        assert_eq!(s.to_integer(), Some(-1));
        assert_eq!(CycInt::zeta_pow(5, 1).to_integer(), None);
        assert_eq!(CycRational::new(CycInt::from_int(5, 125), 125).to_integer(), Some(1));
    }
}
