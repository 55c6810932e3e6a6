//! Symmetries of the exact inner product and of the G(0) closed form.

use ffque::eisenstein::{kappa, CoeffSource};
use ffque::ff::Poly;
use ffque::que::sweep::{g0_closed, g0_three_term};
use ffque::que::{compute_i, TestWeight};
use proptest::prelude::*;
use std::f64::consts::PI;

const Q: u32 = 5;

fn level() -> impl Strategy<Value = Poly> {
    prop::sample::select(vec!["T", "T+1", "T^2+2", "T^3+T+1"]).prop_map(|s| Poly::parse(Q, s).unwrap())
}

fn weight() -> impl Strategy<Value = TestWeight> {
    prop::sample::select(vec!["0:1", "0:1,1:1", "-1:1/2,0:1,2:3"]).prop_map(|s| TestWeight::parse(s).unwrap())
}

fn t_value() -> impl Strategy<Value = f64> {
    // Stay away from the excluded lattice (pi / log q) Z / 2.
    (0.05f64..0.9).prop_map(|f| f * PI / (2.0 * (Q as f64).ln()) + 0.01)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn decomposition_periodicity_and_conjugation(a in level(), psi in weight(), t in t_value(), closed in any::<bool>()) {
        let src = if closed { CoeffSource::Closed } else { CoeffSource::Unfolded };
        let k = kappa(Q);
        let base = compute_i(&a, t, &psi, k, src).unwrap();
        prop_assert!((base.i - base.i1 - base.i2).abs() <= 1e-12 * base.i.abs().max(1.0));
        let shifted = compute_i(&a, t + PI / (Q as f64).ln(), &psi, k, src).unwrap();
        prop_assert!((shifted.i - base.i).abs() <= 1e-9 * base.i.abs().max(1.0));
        let conj = compute_i(&a, -t, &psi, k, src).unwrap();
        prop_assert!((conj.i - base.i).abs() <= 1e-12 * base.i.abs().max(1.0));
    }

    #[test]
    fn g0_forms_agree(t in t_value(), deg in 1u32..7) {
        let abs_a = (Q as f64).powi(deg as i32);
        let lhs = g0_three_term(Q, abs_a, t);
        let rhs = g0_closed(Q, abs_a, t);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs());
    }
}
