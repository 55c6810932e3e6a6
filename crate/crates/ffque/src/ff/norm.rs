use serde::{Deserialize, Serialize};
use std::fmt;

/// The absolute value |x| = q^k on F_q((T^-1)), or 0.
///
/// Ordering is numeric: `Zero` below every power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Norm {
    Zero,
    QPow(i64),
}

impl Norm {
    pub fn exponent(self) -> Option<i64> {
        match self {
            Norm::Zero => None,
            Norm::QPow(k) => Some(k),
        }
    }

    pub fn to_f64(self, q: u32) -> f64 {
        match self {
            Norm::Zero => 0.0,
            Norm::QPow(k) => (q as f64).powi(k as i32),
        }
    }
}

impl std::ops::Mul for Norm {
    type Output = Norm;
    fn mul(self, o: Norm) -> Norm {
        match (self, o) {
            (Norm::QPow(a), Norm::QPow(b)) => Norm::QPow(a + b),
            _ => Norm::Zero,
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Norm::Zero => f.write_str("0"),
            Norm::QPow(k) => write!(f, "q^{k}"),
        }
    }
}
