//! Arithmetic in R = F_q[T]/(A) for monic irreducible A: the projective line
//! P^1(R) and PGL2(R).

use crate::error::{domain, Error, Result};
use crate::ff::{is_irreducible, polys_below, Poly};

/// The residue field F_q[T]/(A).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    a: Poly,
}

impl ResidueField {
    pub fn new(a: &Poly) -> Result<ResidueField> {
        if !a.is_monic() || !is_irreducible(a) {
            return domain(format!("A must be monic irreducible (got {a})"));
        }
        Ok(ResidueField { a: a.clone() })
    }

    pub fn modulus(&self) -> &Poly {
        &self.a
    }

    pub fn q(&self) -> u32 {
        self.a.q()
    }

    /// |A| = number of residues.
    pub fn size(&self) -> u64 {
        (self.q() as u64).pow(self.a.degree().unwrap() as u32)
    }

    pub fn reduce(&self, x: &Poly) -> Poly {
        x.rem(&self.a).expect("nonzero modulus")
    }

    pub fn mul(&self, x: &Poly, y: &Poly) -> Poly {
        self.reduce(&(x * y))
    }

    pub fn sub(&self, x: &Poly, y: &Poly) -> Poly {
        self.reduce(&(x - y))
    }

    pub fn inv(&self, x: &Poly) -> Result<Poly> {
        let x = self.reduce(x);
        if x.is_zero() {
            return domain("inverse of zero residue");
        }
        let (_, u, _) = x.xgcd(&self.a);
        Ok(self.reduce(&u))
    }

    pub fn elements(&self) -> impl Iterator<Item = Poly> {
        polys_below(self.q(), self.a.degree().unwrap())
    }

    /// Canonical point of P^1(R): (x/y : 1) when y != 0, else (1 : 0).
    pub fn p1(&self, x: &Poly, y: &Poly) -> Result<(Poly, Poly)> {
        let x = self.reduce(x);
        let y = self.reduce(y);
        let q = self.q();
        if !y.is_zero() {
            Ok((self.mul(&x, &self.inv(&y)?), Poly::one(q)))
        } else if !x.is_zero() {
            Ok((Poly::one(q), Poly::zero(q)))
        } else {
            Err(Error::Domain("(0 : 0) is not a point of P^1".into()))
        }
    }

    /// Scales a matrix over R so that its first nonzero entry in row-major order is 1.
    pub fn pgl2_canonical(&self, m: [Poly; 4]) -> Result<[Poly; 4]> {
        let m = m.map(|e| self.reduce(&e));
        let lead = m
            .iter()
            .find(|e| !e.is_zero())
            .ok_or_else(|| Error::Domain("zero matrix".into()))?;
        let s = self.inv(lead)?;
        Ok(m.map(|e| self.mul(&e, &s)))
    }

    pub fn det(&self, m: &[Poly; 4]) -> Poly {
        self.sub(&self.mul(&m[0], &m[3]), &self.mul(&m[1], &m[2]))
    }

    pub fn mat_mul(&self, x: &[Poly; 4], y: &[Poly; 4]) -> [Poly; 4] {
        let e = |i: usize, j: usize| self.reduce(&(&(&x[2 * i] * &y[j]) + &(&x[2 * i + 1] * &y[2 + j])));
        [e(0, 0), e(0, 1), e(1, 0), e(1, 1)]
    }

    /// |PGL2(R)| by enumerating canonical representatives with nonzero determinant.
    pub fn pgl2_order_enumerated(&self) -> Result<u64> {
        let n = self.size();
        if n > 125 {
            return Err(Error::Resource(format!("|A| = {n} exceeds the enumeration bound 125")));
        }
        let els: Vec<Poly> = self.elements().collect();

        let mut count = 0u64;
        // Leading entry a = 1: b, c, d free; need d - bc != 0.
        for b in &els {
            for c in &els {
                let bc = self.mul(b, c);
                for d in &els {
                    if *d != bc {
                        count += 1;
                    }
                }
            }
        }
        // a = 0, b = 1: c, d free; need -c != 0.
        for c in &els {
            if !c.is_zero() {
                count += els.len() as u64;
            }
        }
        Ok(count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let r = ResidueField::new(&Poly::t(5)).unwrap();
        assert_eq!(r.pgl2_order_enumerated().unwrap(), 120);
        let r2 = ResidueField::new(&Poly::parse(5, "T^2+2").unwrap()).unwrap();
        assert_eq!(r2.pgl2_order_enumerated().unwrap(), 25 * (625 - 1));
        assert!(ResidueField::new(&Poly::parse(5, "T^2+1").unwrap()).is_err());
    }

    #[test]
    fn p1_points() {
        let r = ResidueField::new(&Poly::parse(5, "T^2+2").unwrap()).unwrap();
        let mut pts = std::collections::HashSet::new();
        for x in r.elements() {
            for y in r.elements() {
                if let Ok(p) = r.p1(&x, &y) {
                    pts.insert(p);
                }
            }
        }
        assert_eq!(pts.len(), 26);
    }
}
