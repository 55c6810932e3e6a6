use super::enumerate::enumerate_polys;
use super::poly::Poly;
use crate::error::{domain, Result};

/// `unit * prod P^e` with monic irreducible `P`, sorted by `Ord for Poly`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u32,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn product(&self, q: u32) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(q, self.unit as i64), |acc, (p, e)| &acc * &p.pow(*e))
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Degrees of all monic divisors, with multiplicity.
    pub fn divisor_degrees(&self) -> Vec<usize> {
        let mut out = vec![0usize];
        for (p, e) in &self.factors {
            let d = p.degree().unwrap();
            out = out
                .iter()
                .flat_map(|&base| (0..=*e as usize).map(move |k| base + k * d))
                .collect();
        }
        out
    }
}

/// Factors a nonzero polynomial by trial division with monic polynomials of
/// degree up to half the remaining degree.
pub fn factor(x: &Poly) -> Result<Factorization> {
    if x.is_zero() {
        return domain("factor of the zero polynomial");
    }
    let q = x.q();
    let unit = x.leading();
    let mut rem = x.monic();
    let mut factors = Vec::new();
    let mut d = 1;
    while 2 * d <= rem.degree().unwrap() {
        for p in enumerate_polys(q, d, true) {
            let mut e = 0;
            loop {
                let (quo, r) = rem.divmod(&p)?;
                if !r.is_zero() {
                    break;
                }
                rem = quo;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
            if 2 * d > rem.degree().unwrap() {
                break;
            }
        }
        d += 1;
    }
    if rem.degree().unwrap() >= 1 {
        factors.push((rem, 1));
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

pub fn is_irreducible(p: &Poly) -> bool {
    match p.degree() {
        None | Some(0) => false,
        Some(1) => true,
        _ => factor(p).map(|f| f.factors.len() == 1 && f.factors[0].1 == 1).unwrap_or(false),
    }
}

fn mobius_int(mut n: u64) -> i64 {
    let mut r = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}

/// Number of monic irreducibles of degree `d` (necklace count).
pub fn count_irreducibles(q: u32, d: usize) -> u64 {
    let d64 = d as u64;
    let s: i128 = (1..=d64)
        .filter(|e| d64 % e == 0)
        .map(|e| mobius_int(d64 / e) as i128 * (q as i128).pow(e as u32))
        .sum();
    (s / d as i128) as u64
}

/// All monic irreducibles up to a degree, produced by sieving out products.
#[derive(Clone, Debug)]
pub struct IrreducibleTable {
    q: u32,
    max_degree: usize,
    polys: Vec<Poly>,
    degrees: Vec<usize>,
}

impl IrreducibleTable {
    pub fn new(q: u32, max_degree: usize) -> IrreducibleTable {
        let mut polys: Vec<Poly> = Vec::new();
        for d in 1..=max_degree {
            let base = (q as u64).pow(d as u32);
            let mut reducible = vec![false; base as usize];
            let lower: Vec<Poly> = polys
                .iter()
                .filter(|p| 2 * p.degree().unwrap() <= d)
                .cloned()
                .collect();
            for p in &lower {
                let e = p.degree().unwrap();
                for m in enumerate_polys(q, d - e, true) {
                    let prod = p * &m;
                    reducible[(prod.index() - base) as usize] = true;
                }
            }
            for (i, r) in reducible.iter().enumerate() {
                if !r {
                    polys.push(Poly::from_index(q, base + i as u64));
                }
            }
        }
        let degrees = polys.iter().map(|p| p.degree().unwrap()).collect();
        IrreducibleTable { q, max_degree, polys, degrees }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn of_degree(&self, d: usize) -> impl Iterator<Item = &Poly> {
        self.polys.iter().filter(move |p| p.degree() == Some(d))
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.degrees[i]
    }

    /// Visits every monic polynomial of degree <= `max_degree` exactly once,
    /// with its factorization as `(table index, exponent)` pairs.
    pub fn for_each_monic<F: FnMut(&Poly, &[(usize, u32)])>(&self, max_degree: usize, mut f: F) {
        assert!(max_degree <= self.max_degree, "table too small");
        let mut stack = Vec::new();
        self.dfs(0, &Poly::one(self.q), 0, max_degree, &mut stack, &mut f);
    }

    fn dfs<F: FnMut(&Poly, &[(usize, u32)])>(
        &self,
        start: usize,
        cur: &Poly,
        deg: usize,
        max: usize,
        stack: &mut Vec<(usize, u32)>,
        f: &mut F,
    ) {
        f(cur, stack);
        for i in start..self.polys.len() {
            let d = self.degrees[i];
            if deg + d > max {
                break;
            }
            let mut p = cur * &self.polys[i];
            let mut k = 1;
            loop {
                stack.push((i, k));
                self.dfs(i + 1, &p, deg + k as usize * d, max, stack, f);
                stack.pop();
                k += 1;
                if deg + k as usize * d > max {
                    break;
                }
                p = &p * &self.polys[i];
            }
        }
    }

    /// Like [`Self::for_each_monic`] without materializing the polynomials;
    /// the callback sees the total degree and the factorization.
    pub fn for_each_factorization<F: FnMut(usize, &[(usize, u32)])>(&self, max_degree: usize, mut f: F) {
        assert!(max_degree <= self.max_degree, "table too small");
        let mut stack = Vec::new();
        self.dfs_shape(0, 0, max_degree, &mut stack, &mut f);
    }

    fn dfs_shape<F: FnMut(usize, &[(usize, u32)])>(
        &self,
        start: usize,
        deg: usize,
        max: usize,
        stack: &mut Vec<(usize, u32)>,
        f: &mut F,
    ) {
        f(deg, stack);
        for i in start..self.polys.len() {
            let d = self.degrees[i];
            if deg + d > max {
                break;
            }
            let mut k = 1;
            while deg + k as usize * d <= max {
                stack.push((i, k));
                self.dfs_shape(i + 1, deg + k as usize * d, max, stack, f);
                stack.pop();
                k += 1;
            }
        }
    }
}

/// Materializes a table factorization of a monic polynomial.
pub fn factor_monic_from_table(t: &IrreducibleTable, idx: &[(usize, u32)]) -> Factorization {
    Factorization {
        unit: 1,
        factors: idx.iter().map(|&(i, e)| (t.polys()[i].clone(), e)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(5, s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(factor(&p("T^2")).unwrap().factors, vec![(p("T"), 2)]);
        let f = factor(&p("T^2+1")).unwrap();
        assert_eq!(f.factors, vec![(p("T+2"), 1), (p("T+3"), 1)]);
        let a = p("T^2+2");
        assert_eq!(factor(&a).unwrap().factors, vec![(a, 1)]);
        assert!(factor(&Poly::zero(5)).is_err());
    }

    #[test]
    fn round_trip_up_to_degree_6() {
        for d in 0..=6 {
            for x in enumerate_polys(5, d, false).step_by(if d >= 5 { 7 } else { 1 }) {
                let f = factor(&x).unwrap();
                assert_eq!(f.product(5), x, "{x}");
                assert!(f.factors.iter().all(|(p, _)| p.is_monic() && is_irreducible(p)));
                assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
            }
        }
    }

    #[test]
    fn repeated_top_factor() {
        let x = p("T^2+2").pow(2);
        assert_eq!(factor(&x).unwrap().factors, vec![(p("T^2+2"), 2)]);
    }

    #[test]
    fn sieve_matches_necklace_count() {
        let t = IrreducibleTable::new(5, 5);
        for d in 1..=5 {
            assert_eq!(t.of_degree(d).count() as u64, count_irreducibles(5, d));
        }
        for p in t.of_degree(3) {
            assert!(is_irreducible(p));
        }
        assert_eq!(count_irreducibles(5, 8), 48_750);
    }

    #[test]
    fn dfs_visits_each_monic_once() {
        let t = IrreducibleTable::new(5, 4);
        let mut seen = std::collections::HashSet::new();
        t.for_each_monic(4, |x, fs| {
            assert!(seen.insert(x.clone()));
            assert_eq!(factor_monic_from_table(&t, fs).product(5), *x);
        });
        assert_eq!(seen.len(), 1 + 5 + 25 + 125 + 625);
        let mut shapes = 0;
        t.for_each_factorization(4, |_, _| shapes += 1);
        assert_eq!(shapes, seen.len());
    }
}
