use std::f64::consts::TAU;

use num_complex::Complex64;
use proptest::prelude::*;

use symdisc::exactfield::AlgNum;
use symdisc::kernel::kernel_gn;
use symdisc::symcore::{elem_sym, in_gn, roots_from_sym, vandermonde_pair, PolyPoint, SymPoint};

fn coord(max_radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0..1.0f64, 0.0..1.0f64).prop_map(move |(r, a)| Complex64::from_polar(max_radius * r.sqrt(), TAU * a))
}

fn coords(n: std::ops::RangeInclusive<usize>, max_radius: f64) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(coord(max_radius), n)
}

fn pair(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (Vec<Complex64>, Vec<Complex64>, Vec<usize>)> {
    n.prop_flat_map(|n| {
        (
            coords(n..=n, 0.9),
            coords(n..=n, 0.9),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        )
    })
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm())
}

/// 1e-12, or the rounding floor of the determinant, about
/// `eps / (|Delta_n| / scale)`, when that is larger.
fn tol(residual_rel: f64) -> f64 {
    (1e-16 / residual_rel).max(1e-12)
}

fn alg() -> impl Strategy<Value = AlgNum> {
    (-20i64..20, -20i64..20, -20i64..20, -20i64..20, 1i64..12)
        .prop_map(|(a, b, c, d, q)| AlgNum::from_ints(a, b, c, d, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn kernel_is_permutation_invariant((l, m, sigma) in pair(2..=5)) {
        let (l, m) = (PolyPoint::in_domain(l).unwrap(), PolyPoint::in_domain(m).unwrap());
        prop_assume!(l.min_separation() > 1e-3 && m.min_separation() > 1e-3);
        let eval = kernel_gn(&l, &m).unwrap();
        let (k, tol) = (eval.value, tol(eval.residual_rel()));
        let kl = kernel_gn(&l.permuted(&sigma), &m).unwrap().value;
        let km = kernel_gn(&l, &m.permuted(&sigma)).unwrap().value;
        prop_assert!(rel(k, kl) < tol && rel(k, km) < tol);
    }

    #[test]
    fn kernel_is_hermitian((l, m, _) in pair(1..=5)) {
        let (l, m) = (PolyPoint::in_domain(l).unwrap(), PolyPoint::in_domain(m).unwrap());
        prop_assume!(l.min_separation() > 1e-3 && m.min_separation() > 1e-3);
        let eval = kernel_gn(&l, &m).unwrap();
        let back = kernel_gn(&m, &l).unwrap().value;
        prop_assert!(rel(back, eval.value.conj()) < tol(eval.residual_rel()));
    }

    #[test]
    fn diagonal_is_positive(l in coords(1..=5, 0.95)) {
        let l = PolyPoint::in_domain(l).unwrap();
        prop_assume!(l.min_separation() > 1e-3);
        let k = kernel_gn(&l, &l).unwrap().value;
        prop_assert!(k.re > 0.0 && k.im.abs() <= 1e-9 * k.re);
    }

    #[test]
    fn vandermonde_pair_survives_joint_permutation((l, m, sigma) in pair(2..=6)) {
        let (l, m) = (PolyPoint::raw(l).unwrap(), PolyPoint::raw(m).unwrap());
        let v = vandermonde_pair(&l, &m);
        let w = vandermonde_pair(&l.permuted(&sigma), &m.permuted(&sigma));
        prop_assert!((v - w).norm() <= 1e-12 * v.norm().max(1e-300));
    }

    #[test]
    fn roots_round_trip(l in coords(1..=8, 0.99), seed in any::<u64>()) {
        let s = elem_sym(&PolyPoint::raw(l.clone()).unwrap());
        let roots = roots_from_sym(&s, seed).unwrap();
        let again = elem_sym(&PolyPoint::raw(roots).unwrap());
        for (a, b) in s.coords().iter().zip(again.coords()) {
            prop_assert!((a - b).norm() < 1e-9);
        }
    }

    #[test]
    fn membership_away_from_the_circle(l in coords(1..=6, 1.0), gap in 1e-6..1e-2f64, j in 0usize..6) {
        let inside: Vec<_> = l.iter().map(|c| c * (1.0 - gap)).collect();
        prop_assert!(in_gn(&elem_sym(&PolyPoint::raw(inside.clone()).unwrap())).unwrap());
        let mut outside = inside;
        let j = j % outside.len();
        outside[j] = Complex64::from_polar(1.0 + gap, outside[j].arg());
        let s = SymPoint::new(elem_sym(&PolyPoint::raw(outside).unwrap()).coords().to_vec()).unwrap();
        prop_assert!(!in_gn(&s).unwrap());
    }

    #[test]
    fn field_axioms(a in alg(), b in alg(), c in alg()) {
        prop_assert!(&a + &b == &b + &a);
        prop_assert!(&a * &b == &b * &a);
        prop_assert!(&(&a + &b) + &c == &a + &(&b + &c));
        prop_assert!(&(&a * &b) * &c == &a * &(&b * &c));
        prop_assert!(&a * &(&b + &c) == &(&a * &b) + &(&a * &c));
        prop_assert!(&(&a - &b) + &b == a);
        if !a.is_zero() {
            prop_assert!(&a * &a.inv().unwrap() == AlgNum::one());
            prop_assert!(a.div(&a).unwrap() == AlgNum::one());
        }
    }
}
