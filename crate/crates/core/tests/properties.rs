use hypergn::closedforms::{g3, gn_closed};
use hypergn::contour::{s_map, s_map_multi};
use hypergn::gauss2f1::{hyp2f1, kernel_K, kernel_pk_partial_sum, pk_coefficients, Hyp2F1Params};
use hypergn::multiseries::{eval_gn_series, CPoint, TruncationSpec};
use hypergn::symmetry::{modulus_quasi_invariance, qn, t_involution, u_invariant, RationalPoint};
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=20).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn rational_point(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
    proptest::collection::vec(nonzero_rational(), n)
}

fn small_complex() -> impl Strategy<Value = Complex64> {
    (-0.05f64..0.05, -0.05f64..0.05).prop_map(|(a, b)| Complex64::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn involution_is_exact(n in 1usize..=4, seed in 0usize..4, x in rational_point(4)) {
        let x = &x[..n];
        let j = seed % n + 1;
        let twice = t_involution(j, &t_involution(j, x).unwrap()).unwrap();
        prop_assert_eq!(twice, x.to_vec());
    }

    #[test]
    fn q_covariance_exact(n in 1usize..=4, seed in 0usize..4, x in rational_point(4)) {
        let x = &x[..n];
        let j = seed % n + 1;
        let y = t_involution(j, x).unwrap();
        prop_assert_eq!(qn(&y) * &x[j - 1] * &x[j - 1], qn(x));
    }

    #[test]
    fn u_invariance_exact(j in 1usize..=3, x in rational_point(3)) {
        prop_assume!(!qn(&x).is_zero());
        let y = t_involution(j, &x).unwrap();
        prop_assume!(!qn(&y).is_zero());
        prop_assert_eq!(u_invariant(&y).unwrap(), u_invariant(&x).unwrap());
    }

    #[test]
    fn permutation_closure(x in rational_point(3), rot in 0usize..3, swap in any::<bool>()) {
        let mut y = x.clone();
        y.rotate_left(rot);
        if swap {
            y.swap(0, 1);
        }
        prop_assert_eq!(qn(&y), qn(&x));
        if !qn(&x).is_zero() {
            prop_assert_eq!(u_invariant(&y).unwrap(), u_invariant(&x).unwrap());
        }
    }

    #[test]
    fn singular_locus_witness(a in 1i64..40, b in 1i64..40, d in 81i64..200) {
        prop_assume!(a + b < d);
        let a = BigRational::new(a.into(), d.into());
        let b = BigRational::new(b.into(), d.into());
        let c = BigRational::one() - &a - &b;
        let x = RationalPoint::new(vec![&a * &a, &b * &b, &c * &c]);
        prop_assert!(u_invariant(x.as_slice()).unwrap().is_one());
    }

    #[test]
    fn modulus_quasi_invariance_negative_reals(n in 2usize..=3, seed in 0usize..3, v in proptest::collection::vec(0.01f64..0.3, 3)) {
        let j = seed % n + 1;
        let x = CPoint::real(&v[..n].iter().map(|a| -a).collect::<Vec<_>>());
        let r = modulus_quasi_invariance(j, &x).unwrap();
        let scale = gn_closed(&x).unwrap().norm();
        prop_assert!(r < 1e-12 * scale.max(1.0), "residual {r}");
    }

    #[test]
    fn s_map_identities(a in small_complex(), t in (0.3f64..2.0, -1.0f64..1.0)) {
        let a = a + Complex64::new(0.1, 0.0);
        let t = Complex64::new(t.0, t.1);
        prop_assume!((t - 1.0).norm() > 1e-3 && (1.0 - a * t).norm() > 1e-3);
        let s = s_map(a, t).unwrap();
        // partial fractions: S = (1/(1−a)) (1/(t−1) + 1/(1−at))
        let pf = (1.0 / (t - 1.0) + 1.0 / (1.0 - a * t)) / (1.0 - a);
        prop_assert!((s - pf).norm() <= 1e-12 * s.norm().max(1.0));
        // t ↔ 1/(at) leaves S unchanged
        let s2 = s_map(a, (a * t).inv()).unwrap();
        prop_assert!((s2 - s).norm() <= 1e-12 * s.norm().max(1.0));
        let m = s_map_multi(&[a], &[t]).unwrap();
        prop_assert!((m - s).norm() <= 1e-14 * s.norm().max(1.0));
    }

    #[test]
    fn series_is_permutation_symmetric(v in proptest::collection::vec(small_complex(), 3)) {
        let x = CPoint::new(v.clone());
        let t = TruncationSpec::with_degree(40);
        let a = eval_gn_series(&x, &t).unwrap().value;
        let b = eval_gn_series(&x.permuted(&[2, 0, 1]), &t).unwrap().value;
        prop_assert!((a - b).norm() <= 1e-14 * a.norm());
    }

    #[test]
    fn series_restriction(v in proptest::collection::vec(small_complex(), 2)) {
        let t = TruncationSpec::default();
        let full = eval_gn_series(&CPoint::new(vec![v[0], v[1], Complex64::zero()]), &t).unwrap().value;
        let head = eval_gn_series(&CPoint::new(v.clone()), &t).unwrap().value;
        prop_assert!((full - head).norm() <= 1e-15 * head.norm());
    }

    #[test]
    fn series_matches_closed_form_n3(v in proptest::collection::vec(small_complex(), 3)) {
        let x = CPoint::new(v);
        let s = eval_gn_series(&x, &TruncationSpec::default()).unwrap().value;
        let c = g3(&x).unwrap();
        prop_assert!((s - c).norm() <= 1e-12 * c.norm());
    }

    #[test]
    fn hyp2f1_increasing_on_real_segment(a in 0.1f64..3.0, b in 0.1f64..3.0, c in 0.1f64..3.0, z in 0.0f64..0.85) {
        let f = |z: f64| hyp2f1(&Hyp2F1Params::real(a, b, c, z), 1e-15).unwrap().value;
        let lo = f(z);
        let hi = f(z + 0.04);
        prop_assert!(lo.im.abs() < 1e-12 && hi.re > lo.re);
    }

    #[test]
    fn kernel_partial_sums_converge(ur in -0.5f64..0.5, ui in -0.3f64..0.3, zr in -3.0f64..3.0, zi in -1.0f64..1.0) {
        let u = Complex64::new(ur, ui);
        prop_assume!(u.norm() <= 0.5);
        let z = Complex64::new(zr, zi);
        prop_assume!(z.norm() <= 3.0);
        let exact = kernel_K(u, z, 1e-15).unwrap().value;
        let partial = kernel_pk_partial_sum(u, z, 600);
        prop_assert!((partial - exact).norm() <= 1e-9 * exact.norm().max(1.0));
    }
}

#[test]
fn pk_extreme_coefficients() {
    let mut fact = BigUint::one();
    for k in 1..=10u32 {
        fact *= k;
        let p = pk_coefficients(k);
        assert_eq!(p.get(2 * k as usize), BigUint::one());
        assert_eq!(p.get(0), &fact * &fact);
    }
}
