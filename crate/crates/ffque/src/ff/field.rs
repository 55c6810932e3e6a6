use crate::error::{domain, Result};
use serde::{Deserialize, Serialize};

/// Returns `Ok` when `q` is a prime greater than 3.
pub fn check_q(q: u32) -> Result<()> {
    if q <= 3 || !is_prime(q) {
        return domain(format!("q must be prime > 3 (got {q})"));
    }
    Ok(())
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the prime field F_q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElt {
    q: u32,
    value: u32,
}

impl FieldElt {
    pub fn new(q: u32, value: i64) -> Self {
        FieldElt { q, value: reduce(q, value) }
    }

    pub fn q(self) -> u32 {
        self.q
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn add(self, o: Self) -> Self {
        FieldElt { q: self.q, value: add(self.q, self.value, o.value) }
    }

    pub fn sub(self, o: Self) -> Self {
        FieldElt { q: self.q, value: sub(self.q, self.value, o.value) }
    }

    pub fn mul(self, o: Self) -> Self {
        FieldElt { q: self.q, value: mul(self.q, self.value, o.value) }
    }

    pub fn neg(self) -> Self {
        FieldElt { q: self.q, value: neg(self.q, self.value) }
    }

    pub fn inv(self) -> Result<Self> {
        if self.value == 0 {
            return domain("inverse of zero in F_q");
        }
        Ok(FieldElt { q: self.q, value: inv(self.q, self.value) })
    }
}

// Raw residue helpers. Callers guarantee operands are already reduced.

#[inline]
pub fn reduce(q: u32, v: i64) -> u32 {
    v.rem_euclid(q as i64) as u32
}

#[inline]
pub fn add(q: u32, a: u32, b: u32) -> u32 {
    let s = a + b;
    if s >= q {
        s - q
    } else {
        s
    }
}

#[inline]
pub fn sub(q: u32, a: u32, b: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + q - b
    }
}

#[inline]
pub fn neg(q: u32, a: u32) -> u32 {
    if a == 0 {
        0
    } else {
        q - a
    }
}

#[inline]
pub fn mul(q: u32, a: u32, b: u32) -> u32 {
    ((a as u64 * b as u64) % q as u64) as u32
}

pub fn pow(q: u32, mut a: u32, mut e: u64) -> u32 {
    let mut r = 1 % q;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(q, r, a);
        }
        a = mul(q, a, a);
        e >>= 1;
    }
    r
}

/// Inverse by Fermat; `a` must be nonzero.
#[inline]
pub fn inv(q: u32, a: u32) -> u32 {
    debug_assert!(a != 0);
    pow(q, a, q as u64 - 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_validation() {
        assert!(check_q(5).is_ok());
        assert!(check_q(7).is_ok());
        assert!(check_q(4).is_err());
        assert!(check_q(3).is_err());
        assert!(check_q(9).is_err());
    }

    #[test]
    fn inverses_mod_5() {
        for a in 1..5 {
            assert_eq!(mul(5, a, inv(5, a)), 1);
        }
        assert!(FieldElt::new(5, 0).inv().is_err());
        assert_eq!(FieldElt::new(5, -1).value(), 4);
    }
}
