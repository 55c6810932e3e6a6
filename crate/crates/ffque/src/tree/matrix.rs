use super::vertex::TreeVertex;
use crate::error::{domain, Result};
use crate::ff::{Laurent, Norm, Poly};
use std::fmt;

/// `[[a, b], [c, d]]` over F_q[T], read projectively.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
}

impl Mat2 {
    pub fn new(a: Poly, b: Poly, c: Poly, d: Poly) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    pub fn identity(q: u32) -> Mat2 {
        Mat2::new(Poly::one(q), Poly::zero(q), Poly::zero(q), Poly::one(q))
    }

    /// `[[0, 1], [1, 0]]`.
    pub fn w(q: u32) -> Mat2 {
        Mat2::new(Poly::zero(q), Poly::one(q), Poly::one(q), Poly::zero(q))
    }

    /// `[[1, b], [0, 1]]`.
    pub fn translation(b: &Poly) -> Mat2 {
        let q = b.q();
        Mat2::new(Poly::one(q), b.clone(), Poly::zero(q), Poly::one(q))
    }

    /// Completes a coprime bottom row `(c, d)` to a matrix of determinant 1.
    pub fn from_bottom_row(c: &Poly, d: &Poly) -> Result<Mat2> {
        let (g, u, v) = c.xgcd(d);
        if !g.is_one() {
            return domain(format!("bottom row ({c}, {d}) is not primitive"));
        }
        // u c + v d = 1, so [[v, -u], [c, d]] has determinant 1.
        Ok(Mat2::new(v, -&u, c.clone(), d.clone()))
    }

    pub fn q(&self) -> u32 {
        self.a.q()
    }

    pub fn det(&self) -> Poly {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            &(&self.a * &o.a) + &(&self.b * &o.c),
            &(&self.a * &o.b) + &(&self.b * &o.d),
            &(&self.c * &o.a) + &(&self.d * &o.c),
            &(&self.c * &o.b) + &(&self.d * &o.d),
        )
    }

    /// Inverse in PGL2(F_q[T]); needs a constant nonzero determinant.
    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        if det.degree() != Some(0) {
            return domain("matrix is not invertible over F_q[T]");
        }
        let s = crate::ff::field::inv(self.q(), det.leading());
        Ok(Mat2::new(self.d.scale(s), (-&self.b).scale(s), (-&self.c).scale(s), self.a.scale(s)))
    }

    pub fn in_gamma0(&self, level: &Poly) -> bool {
        self.det().degree() == Some(0) && (level.is_one() || level.divides(&self.c))
    }

    pub fn max_degree(&self) -> i64 {
        [&self.a, &self.b, &self.c, &self.d].iter().map(|p| p.deg_i64()).max().unwrap()
    }

    /// The vertex `gamma * v`.
    ///
    /// With `g = [[T^n, x], [0, 1]]`, `gamma g = [[a T^n, a x + b], [c T^n, c x + d]]`
    /// is brought back to upper-triangular form by a column operation in K,
    /// pivoting on whichever bottom entry is larger.
    pub fn act(&self, v: &TreeVertex) -> Result<TreeVertex> {
        let q = v.q();
        let n = v.n();
        let x = v.x();
        if self.det().degree() != Some(0) {
            return domain("only unimodular matrices act on vertices here");
        }
        let tn = Laurent::monomial(q, 1, n);
        let lower_left = tn.mul_poly(&self.c);
        let lower_right = x.mul_poly(&self.c).add(&Laurent::from_poly(&self.d));
        let upper_right = x.mul_poly(&self.a).add(&Laurent::from_poly(&self.b));
        let ll = lower_left.norm();
        let lr = lower_right.norm();
        if lr >= ll && lr != Norm::Zero {
            let e = -lower_right.valuation().unwrap();
            let m = n - 2 * e;
            let y = upper_right.div_to(&lower_right, -m)?;
            TreeVertex::new(m, &y)
        } else {
            let e = -lower_left.valuation().unwrap();
            let m = n - 2 * e;
            let upper_left = tn.mul_poly(&self.a);
            let y = upper_left.div_to(&lower_left, -m)?;
            TreeVertex::new(m, &y)
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(5, s).unwrap()
    }

    #[test]
    fn action_is_a_group_action_and_preserves_adjacency() {
        let g1 = Mat2::from_bottom_row(&p("T"), &p("T^2+1")).unwrap();
        let g2 = Mat2::from_bottom_row(&p("T^2+3"), &p("2*T+1")).unwrap();
        let v = TreeVertex::parse(5, "n=-2,x=T^-1+3*T^-2").unwrap();
        let lhs = g1.mul(&g2).act(&v).unwrap();
        let rhs = g1.act(&g2.act(&v).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let gv = g1.act(&v).unwrap();
        for u in v.neighbors() {
            assert!(g1.act(&u).unwrap().is_adjacent(&gv));
        }
        let back = g1.inverse().unwrap().act(&gv).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn w_flips_base_ray() {
        let v = TreeVertex::parse(5, "n=-3,x=0").unwrap();
        assert_eq!(Mat2::w(5).act(&v).unwrap(), TreeVertex::parse(5, "n=3,x=0").unwrap());
    }
}
