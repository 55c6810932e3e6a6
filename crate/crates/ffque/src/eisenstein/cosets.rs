use crate::error::{domain, Error, Result};
use crate::ff::{enumerate_polys, polys_below, Poly};
use std::collections::BTreeSet;

/// Largest number of candidate bottom rows an enumeration may visit.
pub const MAX_COSET_CANDIDATES: u64 = 200_000_000;

/// A class in `Gamma_inf \ Gamma0(A)`, stored as its bottom row `(c, d)`.
///
/// Left multiplication by the upper-triangular stabilizer of infinity only
/// rescales the bottom row, so the classes are the primitive pairs with
/// `A | c` up to `F_q^x`; the first nonzero entry of `(c, d)` is made monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetRep {
    pub c: Poly,
    pub d: Poly,
}

impl CosetRep {
    pub fn identity(q: u32) -> CosetRep {
        CosetRep { c: Poly::zero(q), d: Poly::one(q) }
    }

    /// Canonical scaling of an arbitrary primitive pair.
    pub fn canonical(c: &Poly, d: &Poly) -> Result<CosetRep> {
        if !c.gcd(d).is_one() {
            return domain(format!("({c}, {d}) is not primitive"));
        }
        let lead = if c.is_zero() { d.leading() } else { c.leading() };
        let s = crate::ff::field::inv(c.q(), lead);
        Ok(CosetRep { c: c.scale(s), d: d.scale(s) })
    }

    pub fn max_degree(&self) -> i64 {
        self.c.deg_i64().max(self.d.deg_i64())
    }
}

/// Every class whose bottom row has entries of degree at most `maxdeg`, once.
/// `A = 1` gives the classes of the full group.
pub fn enumerate_cosets(a: &Poly, maxdeg: usize) -> Result<impl Iterator<Item = CosetRep>> {
    let q = a.q();
    if !a.is_monic() {
        return domain(format!("level must be monic (got {a})"));
    }
    let deg_a = a.degree().unwrap();
    let candidates = (q as u64).checked_pow(2 * maxdeg as u32 + 2).unwrap_or(u64::MAX);
    if candidates > MAX_COSET_CANDIDATES {
        return Err(Error::Resource(format!("coset enumeration to degree {maxdeg} is too large")));
    }
    let a = a.clone();
    let multipliers: Vec<Poly> = if maxdeg >= deg_a {
        (0..=maxdeg - deg_a).flat_map(|k| enumerate_polys(q, k, true)).collect()
    } else {
        Vec::new()
    };
    let rest = multipliers.into_iter().flat_map(move |m| {
        let c = &a * &m;
        polys_below(q, maxdeg + 1).filter_map(move |d| c.gcd(&d).is_one().then(|| CosetRep { c: c.clone(), d }))
    });
    Ok(std::iter::once(CosetRep::identity(q)).chain(rest))
}

/// Independent enumeration: all matrices of `Gamma0(A)` with entry degrees at
/// most `maxdeg` and unit determinant, reduced modulo `Gamma_inf` by bottom row.
pub fn brute_coset_classes(a: &Poly, maxdeg: usize) -> Result<BTreeSet<CosetRep>> {
    let q = a.q();
    let count = (q as u64).pow(maxdeg as u32 + 1);
    if count.pow(4) > MAX_COSET_CANDIDATES {
        return Err(Error::Resource("brute matrix enumeration too large".into()));
    }
    let all: Vec<Poly> = polys_below(q, maxdeg + 1).collect();
    let mut out = BTreeSet::new();
    for c in all.iter().filter(|c| a.divides(c)) {
        for d in &all {
            if c.is_zero() && d.is_zero() {
                continue;
            }
            let mut ok = false;
            'top: for x in &all {
                let xd = x * d;
                for y in &all {
                    if (&xd - &(y * c)).degree() == Some(0) {
                        ok = true;
                        break 'top;
                    }
                }
            }
            if ok {
                out.insert(CosetRep::canonical(c, d)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_t_degree_one_matches_brute_force() {
        let a = Poly::t(5);
        let fast: BTreeSet<CosetRep> = enumerate_cosets(&a, 1).unwrap().collect();
        let brute = brute_coset_classes(&a, 1).unwrap();
        assert_eq!(fast.len(), 21);
        assert_eq!(fast, brute);
        assert!(fast.contains(&CosetRep::identity(5)));
        assert!(fast.contains(&CosetRep { c: a.clone(), d: Poly::one(5) }));
    }

    #[test]
    fn level_one_degree_one_matches_brute_force() {
        let a = Poly::one(5);
        let fast: BTreeSet<CosetRep> = enumerate_cosets(&a, 1).unwrap().collect();
        let n = enumerate_cosets(&a, 1).unwrap().count();
        assert_eq!(n, fast.len());
        assert_eq!(fast, brute_coset_classes(&a, 1).unwrap());
    }
}
