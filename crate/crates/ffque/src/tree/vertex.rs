use crate::error::{Error, Result};
use crate::ff::{check_q, Laurent, Poly};
use std::fmt;

/// A vertex of the (q+1)-regular tree: the class of `[[T^n, x], [0, 1]]` in G/K.
///
/// `x` is kept reduced modulo `T^n r_inf`: only the coefficients of `T^j` with
/// `j > n` survive, so equality of vertices is equality of the stored data.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeVertex {
    n: i64,
    x: VertexX,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct VertexX(Laurent);

impl PartialOrd for VertexX {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for VertexX {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        let a: Vec<(u32, i64)> = self.0.terms().collect();
        let b: Vec<(u32, i64)> = o.0.terms().collect();
        a.cmp(&b)
    }
}

impl TreeVertex {
    /// Reduces `x` modulo `T^n r_inf`; `x` must be known at least that far.
    pub fn new(n: i64, x: &Laurent) -> Result<TreeVertex> {
        let x = x.canonical_below(-n)?;
        Ok(TreeVertex { n, x: VertexX(x) })
    }

    pub fn base(q: u32) -> TreeVertex {
        TreeVertex { n: 0, x: VertexX(Laurent::zero(q, crate::ff::EXACT)) }
    }

    pub fn q(&self) -> u32 {
        self.x.0.q()
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn x(&self) -> &Laurent {
        &self.x.0
    }

    /// The up-neighbor first, then the q down-neighbors `(n-1, x + c T^n)`.
    pub fn neighbors(&self) -> Vec<TreeVertex> {
        let q = self.q();
        let mut out = Vec::with_capacity(q as usize + 1);
        out.push(TreeVertex::new(self.n + 1, self.x()).expect("exact x"));
        for c in 0..q as i64 {
            let y = self.x().add(&Laurent::monomial(q, c, self.n));
            out.push(TreeVertex::new(self.n - 1, &y).expect("exact x"));
        }
        out
    }

    pub fn is_adjacent(&self, o: &TreeVertex) -> bool {
        self.neighbors().contains(o)
    }

    /// Fractional-part coefficients of `x` at `T^-1 .. T^-len`.
    pub fn frac_pattern(&self, len: usize) -> Vec<u32> {
        (1..=len as i64).map(|k| self.x().coeff_neg(k).unwrap_or(0)).collect()
    }

    /// Polynomial part of `x` (terms `T^j`, `0 <= j`, with `j > n`).
    pub fn poly_part(&self) -> Poly {
        self.x().polynomial_part().expect("exact x")
    }

    /// Parses `n=-2,x=T^-1+2*T^-3`.
    pub fn parse(q: u32, s: &str) -> Result<TreeVertex> {
        check_q(q)?;
        let mut n = None;
        let mut x = None;
        for part in s.split(',') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in `{part}`")))?;
            match k.trim() {
                "n" => {
                    n = Some(v.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad height `{v}`")))?)
                }
                "x" => x = Some(Laurent::parse(q, v)?),
                other => return Err(Error::Parse(format!("unknown vertex field `{other}`"))),
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing n".into()))?;
        let x = x.unwrap_or_else(|| Laurent::zero(q, crate::ff::EXACT));
        TreeVertex::new(n, &x)
    }
}

impl fmt::Display for TreeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={},x={}", self.n, self.x())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_has_q_plus_one_neighbors() {
        let v = TreeVertex::base(5);
        let nb = v.neighbors();
        assert_eq!(nb.len(), 6);
        let set: std::collections::HashSet<_> = nb.iter().collect();
        assert_eq!(set.len(), 6);
        for u in &nb {
            assert!(u.is_adjacent(&v));
        }
    }

    #[test]
    fn reduction_drops_low_terms() {
        let a = TreeVertex::parse(5, "n=-2,x=T+3*T^-1+T^-2+4*T^-5").unwrap();
        let b = TreeVertex::parse(5, "n=-2,x=T+3*T^-1").unwrap();
        assert_eq!(a, b);
        assert_eq!(TreeVertex::parse(5, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn down_neighbors_differ_in_one_coefficient() {
        let v = TreeVertex::parse(5, "n=0,x=T^2").unwrap();
        let nb = v.neighbors();
        assert_eq!(nb[0], TreeVertex::parse(5, "n=1,x=T^2").unwrap());
        let d = nb[2].x().sub(nb[1].x());
        assert_eq!(d, Laurent::monomial(5, 1, 0));
    }
}
