use super::poly::Poly;

/// Polynomials of exactly `degree`: the q^degree monic ones, or all
/// (q-1)q^degree nonzero ones. Order agrees with `Ord for Poly`.
pub fn enumerate_polys(q: u32, degree: usize, monic_only: bool) -> impl Iterator<Item = Poly> {
    let base = (q as u64).pow(degree as u32);
    let hi = if monic_only { 2 * base } else { q as u64 * base };
    (base..hi).map(move |k| Poly::from_index(q, k))
}

/// Every polynomial of degree < `degree`, zero included: the residues mod a
/// polynomial of that degree.
pub fn polys_below(q: u32, degree: usize) -> impl Iterator<Item = Poly> {
    (0..(q as u64).pow(degree as u32)).map(move |k| Poly::from_index(q, k))
}

/// Monic polynomials of degree 0..=max_degree, by degree.
pub fn monic_up_to(q: u32, max_degree: usize) -> impl Iterator<Item = Poly> {
    (0..=max_degree).flat_map(move |d| enumerate_polys(q, d, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts() {
        assert_eq!(enumerate_polys(5, 2, true).count(), 25);
        assert_eq!(enumerate_polys(5, 0, true).collect::<Vec<_>>(), vec![Poly::one(5)]);
        assert_eq!(enumerate_polys(5, 1, false).count(), 20);
        for d in 0..=4 {
            let all: HashSet<Poly> = enumerate_polys(5, d, true).collect();
            assert_eq!(all.len(), 5usize.pow(d as u32));
            assert!(all.iter().all(|p| p.is_monic() && p.degree() == Some(d)));
        }
    }

    #[test]
    fn order_is_sorted() {
        let v: Vec<Poly> = enumerate_polys(5, 2, false).collect();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }
}
