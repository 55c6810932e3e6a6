//! Tree adjacency, the matrix action and invariance of the Eisenstein series.

use ffque::eisenstein::{eval_direct, GroupPoint};
use ffque::ff::{Laurent, Poly, EXACT};
use ffque::tree::{Mat2, TreeVertex};
use num_complex::Complex64;
use proptest::prelude::*;

const Q: u32 = 5;

fn vertex() -> impl Strategy<Value = TreeVertex> {
    (-5i64..4, prop::collection::vec((0i64..Q as i64, -3i64..8), 0..6))
        .prop_map(|(n, t)| TreeVertex::new(n, &Laurent::from_terms(Q, &t, EXACT)).unwrap())
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0u32..Q, 0..=max_deg + 1).prop_map(|c| Poly::new(Q, c))
}

/// An element of Gamma0(T) of bounded degree: bottom row (Tc, d) coprime, then a translation.
fn gamma0_t() -> impl Strategy<Value = Mat2> {
    gamma0_t_deg(2)
}

fn gamma0_t_deg(d: usize) -> impl Strategy<Value = Mat2> {
    (poly(d), poly(d), poly(d)).prop_filter_map("bottom row must be coprime", |(c, d, b)| {
        let c = &c * &Poly::t(Q);
        if d.is_zero() || !c.gcd(&d).is_one() {
            return None;
        }
        let g = Mat2::from_bottom_row(&c, &d).ok()?;
        Some(Mat2::translation(&b).mul(&g))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn neighbors_are_symmetric(v in vertex()) {
        let nb = v.neighbors();
        prop_assert_eq!(nb.len(), Q as usize + 1);
        for u in &nb {
            prop_assert!(u.neighbors().contains(&v));
        }
    }

    #[test]
    fn action_preserves_adjacency(v in vertex(), g in gamma0_t()) {
        let gv = g.act(&v).unwrap();
        for u in v.neighbors() {
            prop_assert!(g.act(&u).unwrap().is_adjacent(&gv));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn eisenstein_series_is_gamma0_invariant(
        n in -3i64..2,
        t in prop::collection::vec((0i64..Q as i64, 1i64..4), 0..3),
        g in gamma0_t_deg(1),
    ) {
        let a = Poly::t(Q);
        let s = Complex64::new(2.0, 0.5);
        let p: GroupPoint = TreeVertex::new(n, &Laurent::from_terms(Q, &t, EXACT)).unwrap();
        let gp = g.act(&p).unwrap();
        // Images deeper than the evaluator's resolution are out of range, not counterexamples.
        prop_assume!(gp.n() >= -6);
        let e1 = eval_direct(&p, s, &a, 1e-9).unwrap();
        let e2 = eval_direct(&gp, s, &a, 1e-9).unwrap();
        let tol = 2e-9 + 1e-10 * e1.value.norm();
        prop_assert!((e1.value - e2.value).norm() <= tol, "{} vs {}", e1.value, e2.value);
    }
}
