//! Cross-method agreement: series, contour recursion, n-fold contour
//! integral and closed forms evaluated at shared points.

use hypergn::closedforms::{g3_via_elliptic_integral, gn_closed, ClosedFormEvaluator};
use hypergn::contour::{
    contour_integral, gn_via_multicontour, gn_via_recursion, ContourSpec, RecursiveEvaluator, UnitEvaluator,
};
use hypergn::multiseries::{eval_gn_series, CPoint, SeriesEvaluator, TruncationSpec};
use num_complex::Complex64;

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn grid(n: usize) -> Vec<CPoint> {
    let vals = [-0.03, 0.0, 0.02, 0.04];
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        out.push(CPoint::real(&idx.iter().map(|&i| vals[i]).collect::<Vec<_>>()));
        let mut k = 0;
        while k < n {
            idx[k] += 1;
            if idx[k] < vals.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            return out;
        }
    }
}

#[test]
fn oracle_triangle_n2_n3() {
    let contour = ContourSpec::default();
    for n in 2..=3 {
        let base = ClosedFormEvaluator { n: n - 1 };
        for p in grid(n) {
            let s = eval_gn_series(&p, &TruncationSpec::default()).unwrap().value;
            let r = gn_via_recursion(&p, &base, &contour, 1e-13).unwrap().value;
            let c = gn_closed(&p).unwrap();
            assert!(rel(s, c) < 1e-12, "series/closed at {p:?}");
            assert!(rel(r, c) < 1e-11, "recursion/closed at {p:?}");
            assert!(rel(r, s) < 1e-11, "recursion/series at {p:?}");
        }
    }
}

#[test]
fn fully_nested_recursion_from_g0() {
    let contour = ContourSpec::default();
    let unit = UnitEvaluator;
    let g1 = RecursiveEvaluator { base: &unit, contour, tol: 1e-14 };
    let g2 = RecursiveEvaluator { base: &g1, contour, tol: 1e-13 };
    let p = CPoint::real(&[0.02, 0.01, 0.03]);
    let v = gn_via_recursion(&p, &g2, &contour, 1e-12).unwrap().value;
    assert!(rel(v, gn_closed(&p).unwrap()) < 1e-10);
}

#[test]
fn series_base_for_n4() {
    let contour = ContourSpec::default();
    let base = SeriesEvaluator::new(3);
    let p = CPoint::real(&[0.01, 0.02, 0.015, 0.02]);
    let r = gn_via_recursion(&p, &base, &contour, 1e-12).unwrap().value;
    let s = eval_gn_series(&p, &TruncationSpec::default()).unwrap().value;
    assert!(rel(r, s) < 1e-10);
}

#[test]
fn recursion_and_multicontour_agree() {
    let rc = ContourSpec::default();
    let mc = ContourSpec::multicontour_default();
    for n in 1..=3 {
        let base = ClosedFormEvaluator { n: n - 1 };
        for p in [CPoint::real(&[0.02, 0.01, 0.03][..n]), CPoint::real(&[-0.02, 0.03, 0.01][..n])] {
            let m = gn_via_multicontour(&p, &mc, 1e-10).unwrap().value;
            let s = eval_gn_series(&p, &TruncationSpec::default()).unwrap().value;
            assert!(rel(m, s) < 1e-9, "multicontour n={n}");
            if n >= 2 {
                let r = gn_via_recursion(&p, &base, &rc, 1e-12).unwrap().value;
                assert!(rel(m, r) < 1e-9, "multicontour/recursion n={n}");
            }
        }
    }
}

#[test]
fn contour_radius_independence() {
    let p = CPoint::real(&[0.03, 0.02, 0.01]);
    let base = ClosedFormEvaluator { n: 2 };
    let reference = gn_via_recursion(&p, &base, &ContourSpec::default(), 1e-13).unwrap().value;
    for radius in [0.3, 0.4, 0.45, 0.55, 0.6] {
        let c = ContourSpec::new(Complex64::new(1.0, 0.0), radius, 256).unwrap();
        let v = gn_via_recursion(&p, &base, &c, 1e-13).unwrap().value;
        assert!((v - reference).norm() < 1e-9, "radius {radius}");
    }
}

#[test]
fn trapezoid_converges_geometrically() {
    // (1/2πi)∮ e^t/(t − 1) dt = e around t = 1
    let f = |t: Complex64| -> hypergn::Result<Complex64> { Ok(t.exp() / (t - 1.0)) };
    let c = ContourSpec::new(Complex64::new(1.0, 0.0), 0.5, 16).unwrap();
    let pass = |n: usize| -> f64 {
        let v = (0..n).map(|k| c.node(k, n)).map(|t| f(t).unwrap() * (t - c.center)).sum::<Complex64>() / n as f64;
        (v - std::f64::consts::E).norm()
    };
    let (e8, e16) = (pass(8), pass(16));
    assert!(e8 < 1e-3);
    assert!(e16 <= e8 * e8 * 10.0 + 1e-15, "{e8:e} {e16:e}");
    let q = contour_integral(f, &c, 1e-14).unwrap();
    assert!((q.value - std::f64::consts::E).norm() < 1e-14);
}

#[test]
fn monotone_shells_and_tail_bound() {
    for p in [CPoint::real(&[0.1, 0.1]), CPoint::real(&[0.05, 0.08, 0.02]), CPoint::real(&[0.2, 0.1])] {
        let mut prev = 0.0;
        for d in [5usize, 10, 20, 40] {
            let e = eval_gn_series(&p, &TruncationSpec { max_total_degree: d, target_tol: 0.0, max_terms: usize::MAX }).unwrap();
            assert!(e.value.re >= prev);
            prev = e.value.re;
            let deeper = eval_gn_series(&p, &TruncationSpec { max_total_degree: 2 * d, target_tol: 0.0, max_terms: usize::MAX }).unwrap();
            assert!((deeper.value - e.value).norm() <= e.error_estimate + 1e-15, "{p:?} d={d}");
        }
    }
}

#[test]
fn closed_form_region_box_0_1() {
    // the closed form for G_3 agrees with the series on [0, 0.1]³
    let s = [0.0, 0.05, 0.1];
    for &a in &s {
        for &b in &s {
            for &c in &s {
                let p = CPoint::real(&[a, b, c]);
                let v = eval_gn_series(&p, &TruncationSpec::default()).unwrap().value;
                let g = gn_closed(&p).unwrap();
                assert!(rel(v, g) < 1e-10, "{p:?}");
                if c > 0.0 {
                    let e = g3_via_elliptic_integral(&p, 1e-15).unwrap().value;
                    assert!(rel(e, g) < 1e-12, "{p:?}");
                }
            }
        }
    }
}
