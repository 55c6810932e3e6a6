use super::orbit::{reduce, witness, Level, OrbitKey};
use super::vertex::TreeVertex;
use crate::error::{Error, Result};
use crate::ff::Poly;
use nalgebra::DMatrix;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::io::Write;

/// Largest number of quotient vertices a build may produce.
pub const MAX_QUOTIENT_VERTICES: usize = 20_000;

/// Orbit-collapsed neighborhood structure of a truncated quotient.
///
/// `weights[i]` maps a vertex index to the number of tree neighbors of the
/// representative of `i` lying in that orbit. `boundary[i]` counts neighbors
/// in orbits beyond the exploration radius, so each row plus its boundary
/// weight sums to q + 1.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientGraph {
    pub q: u32,
    pub level: String,
    pub depth: usize,
    pub degbound: i64,
    pub representatives: Vec<String>,
    pub keys: Vec<OrbitKey>,
    pub distance: Vec<usize>,
    pub weights: Vec<BTreeMap<usize, u32>>,
    pub boundary: Vec<u32>,
    pub completeness: Completeness,
}

/// How the identifications were certified.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Completeness {
    /// Identifications backed by an explicit, re-applied group element.
    pub witnessed: usize,
    /// Largest entry degree among those witnesses.
    pub max_witness_degree: i64,
    /// Every witness fits inside the requested degree bound.
    pub within_degbound: bool,
    /// Distinct orbits are separated by a complete invariant, not by search.
    pub separation_by_invariant: bool,
}

impl QuotientGraph {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn weighted_degree(&self, i: usize) -> u32 {
        self.weights[i].values().sum::<u32>() + self.boundary[i]
    }

    /// Number of unordered edges (including loops) inside the truncation.
    pub fn edge_count(&self) -> usize {
        let mut n = 0;
        for (i, row) in self.weights.iter().enumerate() {
            n += row.keys().filter(|&&j| j >= i).count();
        }
        n
    }

    /// The quotient is a path `0 - 1 - 2 - ...` in BFS order.
    pub fn is_path(&self) -> bool {
        self.weights.iter().enumerate().all(|(i, row)| {
            row.keys().all(|&j| j + 1 == i || i + 1 == j)
                && (i == 0 || row.contains_key(&(i - 1)))
        })
    }

    /// Symmetrized weighted adjacency `sqrt(w_ij w_ji)`.
    pub fn symmetric_matrix(&self) -> DMatrix<f64> {
        let n = self.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, row) in self.weights.iter().enumerate() {
            for (&j, &w) in row {
                let back = self.weights[j].get(&i).copied().unwrap_or(0);
                m[(i, j)] = ((w * back) as f64).sqrt();
            }
        }
        m
    }

    /// Lines `vertex_id neighbor_id weight`.
    pub fn write_adjacency<W: Write>(&self, mut w: W) -> Result<()> {
        for (i, row) in self.weights.iter().enumerate() {
            for (&j, &wt) in row {
                writeln!(w, "{i} {j} {wt}").map_err(|e| Error::Resource(e.to_string()))?;
            }
        }
        Ok(())
    }

    pub fn manifest(&self) -> serde_json::Value {
        serde_json::json!({
            "q": self.q,
            "A": self.level,
            "depth": self.depth,
            "degbound": self.degbound,
            "vertices": self.len(),
            "edges": self.edge_count(),
            "completeness_flags": self.completeness,
            "representatives": self.representatives,
        })
    }
}

/// Quotient of the tree by `Gamma0(A)` (the full group when `A = 1`) explored
/// to `depth` steps from the base vertex.
pub fn build_quotient(a: &Poly, depth: usize, degbound: i64) -> Result<QuotientGraph> {
    build_quotient_level(&Level::gamma0(a)?, depth, degbound)
}

pub fn build_quotient_level(level: &Level, depth: usize, degbound: i64) -> Result<QuotientGraph> {
    let q = level.q();
    let base = TreeVertex::base(q);
    let mut index: HashMap<OrbitKey, usize> = HashMap::new();
    let mut reps = vec![base.clone()];
    let mut keys = vec![reduce(level, &base)?.key];
    let mut distance = vec![0usize];
    index.insert(keys[0].clone(), 0);
    let mut weights: Vec<BTreeMap<usize, u32>> = vec![BTreeMap::new()];
    let mut boundary = vec![0u32];
    let mut comp = Completeness { within_degbound: true, separation_by_invariant: true, ..Default::default() };
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let rep = reps[i].clone();
        for nb in rep.neighbors() {
            let key = reduce(level, &nb)?.key;
            let j = match index.get(&key) {
                Some(&j) => {
                    let g = witness(level, &nb, &reps[j])?
                        .ok_or_else(|| Error::Domain(format!("no witness for {nb} ~ {}", reps[j])))?;
                    comp.witnessed += 1;
                    comp.max_witness_degree = comp.max_witness_degree.max(g.max_degree());
                    Some(j)
                }
                None if distance[i] < depth => {
                    let j = reps.len();
                    if j >= MAX_QUOTIENT_VERTICES {
                        return Err(Error::Resource(format!("quotient exceeds {MAX_QUOTIENT_VERTICES} vertices")));
                    }
                    index.insert(key.clone(), j);
                    reps.push(nb.clone());
                    keys.push(key);
                    distance.push(distance[i] + 1);
                    weights.push(BTreeMap::new());
                    boundary.push(0);
                    queue.push_back(j);
                    Some(j)
                }
                None => None,
            };
            match j {
                Some(j) => *weights[i].entry(j).or_insert(0) += 1,
                None => boundary[i] += 1,
            }
        }
    }
    comp.within_degbound = comp.max_witness_degree <= degbound;
    let label = match level {
        Level::Full(_) => "1".to_string(),
        Level::Gamma0(r) => r.modulus().to_string(),
        Level::Principal(r) => format!("Gamma({})", r.modulus()),
    };
    Ok(QuotientGraph {
        q,
        level: label,
        depth,
        degbound,
        representatives: reps.iter().map(|v| v.to_string()).collect(),
        keys,
        distance,
        weights,
        boundary,
        completeness: comp,
    })
}

/// Eigenvalues of the symmetrized adjacency, sorted, with a band census.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<f64>,
    /// Counts in `[-(q+1), -2 sqrt q)`, `[-2 sqrt q, 2 sqrt q]`, `(2 sqrt q, q+1]`.
    pub bands: [usize; 3],
    pub ramanujan_fraction: f64,
    pub within_perron: bool,
}

pub fn adjacency_spectrum(g: &QuotientGraph) -> SpectrumReport {
    let m = g.symmetric_matrix();
    let mut ev: Vec<f64> = if g.is_empty() {
        Vec::new()
    } else {
        nalgebra::SymmetricEigen::new(m).eigenvalues.iter().copied().collect()
    };
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let r = 2.0 * (g.q as f64).sqrt();
    let top = (g.q + 1) as f64;
    let eps = 1e-9;
    let mut bands = [0usize; 3];
    for &x in &ev {
        if x < -r - eps {
            bands[0] += 1;
        } else if x <= r + eps {
            bands[1] += 1;
        } else {
            bands[2] += 1;
        }
    }
    let within_perron = ev.iter().all(|&x| x.abs() <= top + eps);
    let ramanujan_fraction = if ev.is_empty() { 0.0 } else { bands[1] as f64 / ev.len() as f64 };
    SpectrumReport { eigenvalues: ev, bands, ramanujan_fraction, within_perron }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_group_is_a_path() {
        let g = build_quotient(&Poly::one(5), 5, 8).unwrap();
        assert_eq!(g.len(), 6);
        assert!(g.is_path());
        assert_eq!(g.weights[0][&1], 6);
        for i in 1..6 {
            assert_eq!(g.weights[i][&(i - 1)], 5);
        }
        for i in 0..6 {
            assert_eq!(g.weighted_degree(i), 6);
        }
        let s = adjacency_spectrum(&g);
        assert!(s.within_perron);
    }

    #[test]
    fn depth_zero_is_a_single_vertex() {
        let g = build_quotient(&Poly::t(5), 0, 8).unwrap();
        assert_eq!(g.len(), 1);
        let s = adjacency_spectrum(&g);
        assert_eq!(s.eigenvalues.len(), 1);
        assert!(s.eigenvalues[0].abs() < 1e-12);
    }

    #[test]
    fn gamma0_t_degrees() {
        let g = build_quotient(&Poly::t(5), 4, 8).unwrap();
        for i in 0..g.len() {
            assert_eq!(g.weighted_degree(i), 6);
        }
        assert!(g.completeness.within_degbound);
    }
}
