//! Invariants of F_q[T], F_q((T^-1)), the characters and the multiplicative functions.

use ffque::arith::{mobius, sigma, totient};
use ffque::character::chi_exponent;
use ffque::dirichlet::USeries;
use ffque::ff::{Laurent, Poly, EXACT};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

const Q: u32 = 5;

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0u32..Q, 0..=max_deg + 1).prop_map(|c| Poly::new(Q, c))
}

fn monic(max_deg: usize) -> impl Strategy<Value = Poly> {
    poly(max_deg).prop_map(|p| if p.is_zero() { Poly::one(Q) } else { p.monic() })
}

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((0i64..Q as i64, -4i64..8), 0..8).prop_map(|t| Laurent::from_terms(Q, &t, EXACT))
}

proptest! {
    #[test]
    fn divmod_reconstructs(a in poly(8), b in poly(4)) {
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.divmod(&b).unwrap();
        prop_assert_eq!(&(&quo * &b) + &rem, a);
        prop_assert!(rem.deg_i64() < b.deg_i64());
    }

    #[test]
    fn gcd_divides_and_bezout(a in poly(6), b in poly(6)) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let g = a.gcd(&b);
        prop_assert!(g.is_monic());
        prop_assert!(g.divides(&a) && g.divides(&b));
        let (d, u, v) = a.xgcd(&b);
        prop_assert_eq!(&(&u * &a) + &(&v * &b), d);
    }

    #[test]
    fn ultrametric_norm(x in laurent(), y in laurent()) {
        let s = x.add(&y).norm();
        prop_assert!(s <= x.norm().max(y.norm()));
        if x.norm() != y.norm() {
            prop_assert_eq!(s, x.norm().max(y.norm()));
        }
        prop_assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn laurent_inverse(x in laurent()) {
        prop_assume!(!x.is_zero());
        let inv = x.inverse(30).unwrap();
        let prod = x.mul(&inv);
        // Monomials invert exactly; otherwise the product is 1 to its precision.
        let prec = prod.precision().unwrap_or(30);
        prop_assert!(prec >= 20);
        prop_assert!(prod.sub(&Laurent::one(Q)).truncate(prec).is_zero());
    }

    #[test]
    fn character_is_additive(x in laurent(), y in laurent()) {
        let lhs = chi_exponent(&x.add(&y)).unwrap();
        let rhs = (chi_exponent(&x).unwrap() + chi_exponent(&y).unwrap()) % Q;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplicative_on_coprime(a in monic(3), b in monic(3)) {
        prop_assume!(a.gcd(&b).is_one());
        let ab = &a * &b;
        prop_assert_eq!(totient(&ab).unwrap(), totient(&a).unwrap() * totient(&b).unwrap());
        prop_assert_eq!(mobius(&ab).unwrap(), mobius(&a).unwrap() * mobius(&b).unwrap());
        let nu = Complex64::new(0.3, -1.1);
        let gap = sigma(&ab, nu).unwrap() - sigma(&a, nu).unwrap() * sigma(&b, nu).unwrap();
        prop_assert!(gap.norm() < 1e-9);
    }

    #[test]
    fn series_division_undoes_multiplication(
        f in prop::collection::vec(-9i64..10, 1..8),
        g in prop::collection::vec(-9i64..10, 1..8),
    ) {
        let mut g = g;
        if g[0] == 0 {
            g[0] = 1;
        }
        let n = 7;
        let fs = USeries::from_ints(n, &f);
        let gs = USeries::from_ints(n, &g);
        let back = fs.mul(&gs).div(&gs).unwrap();
        for k in 0..=n {
            let want = f.get(k).map_or(BigRational::from_integer(BigInt::from(0)), |&c| BigRational::from_integer(BigInt::from(c)));
            prop_assert_eq!(back.coeff(k), &want);
        }
    }
}
