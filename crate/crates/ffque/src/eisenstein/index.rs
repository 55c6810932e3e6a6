use crate::error::Result;
use crate::ff::Poly;
use crate::residue::ResidueField;

/// `[PGL2(F_q[T]) : Gamma0(A)] = |A| + 1` for irreducible `A`.
pub fn index_gamma0(a: &Poly) -> Result<u64> {
    let r = ResidueField::new(a)?;
    Ok(r.size() + 1)
}

/// Number of points of `P^1(F_q[T]/(A))`, counted by enumeration; the cosets of
/// `Gamma0(A)` correspond to these points.
pub fn p1_point_count(a: &Poly) -> Result<u64> {
    let r = ResidueField::new(a)?;
    let mut pts = std::collections::HashSet::new();
    for x in r.elements() {
        for y in r.elements() {
            if let Ok(p) = r.p1(&x, &y) {
                pts.insert(p);
            }
        }
    }
    Ok(pts.len() as u64)
}

/// `#PGL2(F_q[T]/(A))` by enumerating canonical matrices; `|A| <= 125`.
pub fn order_pgl2_residue(a: &Poly) -> Result<u64> {
    ResidueField::new(a)?.pgl2_order_enumerated()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_levels() {
        let t = Poly::t(5);
        assert_eq!(index_gamma0(&t).unwrap(), 6);
        assert_eq!(p1_point_count(&t).unwrap(), 6);
        assert_eq!(order_pgl2_residue(&t).unwrap(), 120);
        let a2 = Poly::parse(5, "T^2+2").unwrap();
        assert_eq!(index_gamma0(&a2).unwrap(), 26);
        let quartic = crate::ff::enumerate_polys(5, 4, true).find(crate::ff::is_irreducible).unwrap();
        assert!(matches!(order_pgl2_residue(&quartic), Err(crate::Error::Resource(_))));
    }
}
