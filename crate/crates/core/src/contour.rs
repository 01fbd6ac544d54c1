//! The quadratic maps `S(a; t)`, trapezoidal quadrature on circles, and the
//! integral representations of `G_n` and of the kernel `K(u, z)` built on them.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::multiseries::{CPoint, Evaluation};

/// Hard cap on nodes per circle.
pub const MAX_NODES: usize = 1 << 16;

/// Cap on the total tensor-grid size for [`gn_via_multicontour`].
pub const MAX_GRID_POINTS: usize = 1 << 24;

/// A function `G_m` usable as the inner function of the recursion.
pub trait GnEvaluator: Sync {
    /// Number of variables `m`.
    fn dim(&self) -> usize;
    /// Whether `eval` is trusted at `x`. Checked at every quadrature node.
    fn in_domain(&self, x: &CPoint) -> bool;
    fn eval(&self, x: &CPoint) -> Result<Complex64>;
}

/// `G_0 ≡ 1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct UnitEvaluator;

impl GnEvaluator for UnitEvaluator {
    fn dim(&self) -> usize {
        0
    }

    fn in_domain(&self, _x: &CPoint) -> bool {
        true
    }

    fn eval(&self, _x: &CPoint) -> Result<Complex64> {
        Ok(Complex64::one())
    }
}

/// Positively oriented circle sampled at `nodes` equispaced points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub center: Complex64,
    pub radius: f64,
    pub nodes: usize,
}

impl Default for ContourSpec {
    /// Circle around `t = 1` of radius ½, 256 starting nodes.
    fn default() -> Self {
        ContourSpec { center: Complex64::one(), radius: 0.5, nodes: 256 }
    }
}

impl ContourSpec {
    pub fn new(center: Complex64, radius: f64, nodes: usize) -> Result<Self> {
        let c = ContourSpec { center, radius, nodes };
        c.validate()?;
        Ok(c)
    }

    /// Starting resolution for the tensor-product integrals.
    pub fn multicontour_default() -> Self {
        ContourSpec { nodes: 32, ..Default::default() }
    }

    /// Circle enclosing both `t = 0` and `t = 1`, used for the kernel integral.
    pub fn kernel_default() -> Self {
        ContourSpec { center: Complex64::new(0.5, 0.0), radius: 0.75, nodes: 64 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::Parameter(format!("contour radius must be positive, got {}", self.radius)));
        }
        if self.nodes < 16 || !self.nodes.is_power_of_two() {
            return Err(Error::Parameter(format!("node count must be a power of two >= 16, got {}", self.nodes)));
        }
        Ok(())
    }

    pub fn encloses(&self, p: Complex64) -> bool {
        (p - self.center).norm() < self.radius
    }

    /// Node `k` of `n`, at angle `2πk/n`.
    pub fn node(&self, k: usize, n: usize) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, 2.0 * PI * k as f64 / n as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub node_count_used: usize,
    /// `|value(N) − value(N/2)|` at the accepted `N`.
    pub successive_diff: f64,
}

impl QuadratureResult {
    pub fn into_evaluation(self) -> Evaluation {
        Evaluation {
            value: self.value,
            error_estimate: self.successive_diff,
            terms_used: self.node_count_used,
            degree_reached: 0,
        }
    }
}

fn converged(diff: f64, value: Complex64, tol: f64) -> bool {
    diff <= tol * value.norm().max(1.0)
}

/// `S(a; t) = t / ((t − 1)(1 − a t))`.
pub fn s_map(a: Complex64, t: Complex64) -> Result<Complex64> {
    let den = (t - 1.0) * (1.0 - a * t);
    if den.is_zero() {
        return Err(Error::Pole { depth: 0, detail: format!("S({a}; {t}) has a pole") });
    }
    Ok(t / den)
}

/// `S(a_1..a_m; t_1..t_m) = S(S(a_m; t_m)·(a_1..a_{m−1}); (t_1..t_{m−1}))`.
pub fn s_map_multi(a: &[Complex64], t: &[Complex64]) -> Result<Complex64> {
    if a.len() != t.len() || a.is_empty() {
        return Err(Error::Parameter(format!("S-map needs equal nonzero lengths, got {} and {}", a.len(), t.len())));
    }
    let m = a.len();
    let mut scale = Complex64::one();
    for i in (0..m).rev() {
        let s = s_map(scale * a[i], t[i]).map_err(|e| match e {
            Error::Pole { detail, .. } => Error::Pole { depth: m - 1 - i, detail },
            other => other,
        })?;
        if i == 0 {
            return Ok(s);
        }
        scale *= s;
    }
    unreachable!()
}

/// `(1/2πi) ∮ f(t) dt` on the circle, doubling nodes until two successive
/// trapezoidal values agree to `tol` (absolute below magnitude one, relative above).
pub fn contour_integral<F>(f: F, c: &ContourSpec, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    c.validate()?;
    // (1/2πi)∮ f dt = (1/N) Σ f(t_k)(t_k − center) for t_k on the circle
    let weighted = |k: usize, n: usize| -> Result<Complex64> {
        let t = c.node(k, n);
        Ok(f(t)? * (t - c.center))
    };
    let mut n = c.nodes;
    let mut acc = Complex64::zero();
    for k in 0..n {
        acc += weighted(k, n)?;
    }
    let mut value = acc / n as f64;
    loop {
        let n2 = 2 * n;
        if n2 > MAX_NODES {
            return Err(Error::NonConvergence(format!("node cap {MAX_NODES} reached without meeting tol {tol:e}")));
        }
        for k in 0..n {
            acc += weighted(2 * k + 1, n2)?;
        }
        let next = acc / n2 as f64;
        let diff = (next - value).norm();
        value = next;
        n = n2;
        if converged(diff, value, tol) {
            return Ok(QuadratureResult { value, node_count_used: n, successive_diff: diff });
        }
    }
}

fn check_recursion_contour(xn: Complex64, c: &ContourSpec) -> Result<()> {
    if !c.encloses(Complex64::one()) {
        return Err(Error::Domain("contour must encircle t = 1".into()));
    }
    if !xn.is_zero() {
        let pole = xn.inv();
        if (pole - c.center).norm() <= c.radius {
            return Err(Error::Domain(format!("pole 1/x_n = {pole} lies on or inside the contour")));
        }
    }
    if c.encloses(Complex64::zero()) {
        return Err(Error::Domain("contour must leave t = 0 outside".into()));
    }
    Ok(())
}

/// `G_n(x) = (1/2πi) ∮ G_{n−1}(S(x_n; t) x′) S(x_n; t) dt/t`, one recursion step.
///
/// Every node's mapped argument `S(x_n; t) x′` is tested against the base
/// evaluator's domain before it is evaluated.
pub fn gn_via_recursion(x: &CPoint, base: &dyn GnEvaluator, c: &ContourSpec, tol: f64) -> Result<Evaluation> {
    let n = x.dim();
    if base.dim() + 1 != n {
        return Err(Error::Parameter(format!("base evaluator has dimension {}, need {}", base.dim(), n - 1)));
    }
    let xn = x.last();
    check_recursion_contour(xn, c)?;
    let head = if n > 1 { Some(x.head()) } else { None };
    let integrand = |t: Complex64| -> Result<Complex64> {
        let s = s_map(xn, t)?;
        let inner = match &head {
            None => Complex64::one(),
            Some(h) => {
                let y = h.scaled(s);
                if !base.in_domain(&y) {
                    return Err(Error::Domain(format!(
                        "mapped argument leaves the base domain at node t = {t:.6}"
                    )));
                }
                base.eval(&y)?
            }
        };
        Ok(inner * s / t)
    };
    contour_integral(integrand, c, tol).map(QuadratureResult::into_evaluation)
}

/// `G_n` by nested application of [`gn_via_recursion`] over a base evaluator.
pub struct RecursiveEvaluator<'a> {
    pub base: &'a dyn GnEvaluator,
    pub contour: ContourSpec,
    pub tol: f64,
}

impl GnEvaluator for RecursiveEvaluator<'_> {
    fn dim(&self) -> usize {
        self.base.dim() + 1
    }

    fn in_domain(&self, x: &CPoint) -> bool {
        if check_recursion_contour(x.last(), &self.contour).is_err() {
            return false;
        }
        if x.dim() == 1 {
            return true;
        }
        let head = x.head();
        let n = self.contour.nodes;
        (0..n).all(|k| {
            let t = self.contour.node(k, n);
            s_map(x.last(), t).map(|s| self.base.in_domain(&head.scaled(s))).unwrap_or(false)
        })
    }

    fn eval(&self, x: &CPoint) -> Result<Complex64> {
        gn_via_recursion(x, self.base, &self.contour, self.tol).map(|e| e.value)
    }
}

/// Trapezoidal tensor sum of `Π_j S(x̄_j; t̄_j)/t_j` with `n_per_dim` nodes per circle.
fn multicontour_sum(x: &[Complex64], c: &ContourSpec, n_per_dim: usize) -> Result<Complex64> {
    let nodes: Vec<Complex64> = (0..n_per_dim).map(|k| c.node(k, n_per_dim)).collect();
    let dim = x.len();
    // S(x̄_j; t̄_j) = S(x_j Π_{k>j} S(x̄_k; t̄_k); t_j), so walk from the last variable inwards
    fn walk(
        j: usize,
        scale: Complex64,
        x: &[Complex64],
        nodes: &[Complex64],
        c: &ContourSpec,
    ) -> Result<Complex64> {
        let mut acc = Complex64::zero();
        for &t in nodes {
            let s = s_map(scale * x[j], t)?;
            let w = s * (t - c.center) / t;
            let inner = if j == 0 { Complex64::one() } else { walk(j - 1, scale * s, x, nodes, c)? };
            acc += w * inner;
        }
        Ok(acc / nodes.len() as f64)
    }
    walk(dim - 1, Complex64::one(), x, &nodes, c)
}

/// `G_n(x) = (2πi)^{−n} ∮…∮ Π_j S(x̄_j; t̄_j) dt_j/t_j` for `n ≤ 3`.
pub fn gn_via_multicontour(x: &CPoint, c: &ContourSpec, tol: f64) -> Result<Evaluation> {
    c.validate()?;
    let n = x.dim();
    if n > 3 {
        return Err(Error::UnsupportedDimension(n));
    }
    if !c.encloses(Complex64::one()) || c.encloses(Complex64::zero()) {
        return Err(Error::Domain("contour must encircle t = 1 and leave t = 0 outside".into()));
    }
    let coords = x.as_slice();
    // the nested maps only see poles near 1/(scale·x_j); check them on the starting grid
    let probe = |nodes: usize| -> Result<()> {
        let pts: Vec<Complex64> = (0..nodes).map(|k| c.node(k, nodes)).collect();
        fn rec(j: usize, scale: Complex64, x: &[Complex64], pts: &[Complex64], c: &ContourSpec) -> Result<()> {
            let a = scale * x[j];
            if !a.is_zero() && (a.inv() - c.center).norm() <= c.radius {
                return Err(Error::Domain(format!(
                    "pole of the variable-{} map falls inside the contour; x is not small enough",
                    j + 1
                )));
            }
            if j == 0 {
                return Ok(());
            }
            for &t in pts {
                rec(j - 1, scale * s_map(a, t)?, x, pts, c)?;
            }
            Ok(())
        }
        rec(coords.len() - 1, Complex64::one(), coords, &pts, c)
    };
    probe(c.nodes.min(64))?;

    let mut per_dim = c.nodes;
    let mut value = multicontour_sum(coords, c, per_dim)?;
    loop {
        let next_dim = per_dim * 2;
        if next_dim > MAX_NODES || next_dim.pow(n as u32) > MAX_GRID_POINTS {
            return Err(Error::NonConvergence(format!(
                "grid cap reached at {per_dim} nodes per circle without meeting tol {tol:e}"
            )));
        }
        let next = multicontour_sum(coords, c, next_dim)?;
        let diff = (next - value).norm();
        value = next;
        per_dim = next_dim;
        if converged(diff, value, tol) {
            return Ok(Evaluation {
                value,
                error_estimate: diff,
                terms_used: per_dim.pow(n as u32),
                degree_reached: 0,
            });
        }
    }
}

/// Largest argument jump between neighbouring nodes before the loop is
/// considered under-resolved.
const MAX_ARG_STEP: f64 = PI / 2.0;

/// One trapezoidal pass of the kernel integral.
///
/// `log S = log(t/(t−1)) − log(1−ut)`, both principal: the first is analytic
/// off `[0, 1]`, the second off `[1/u, ∞)`, so on an admissible loop their
/// sum is continuous. Adjacent nodes (cyclically) are checked for jumps.
fn kernel_pass(u: Complex64, z: Complex64, c: &ContourSpec, n: usize) -> Result<Complex64> {
    let exponent = z + 1.0;
    let mut acc = Complex64::zero();
    let mut first_arg = 0.0f64;
    let mut prev_arg = 0.0f64;
    for k in 0..n {
        let t = c.node(k, n);
        let one_minus = Complex64::one() - u * t;
        if (t - 1.0).is_zero() || t.is_zero() || one_minus.is_zero() {
            return Err(Error::Pole { depth: 0, detail: format!("kernel integrand singular at node t = {t}") });
        }
        let log_s = (t / (t - 1.0)).ln() - one_minus.ln();
        if k == 0 {
            first_arg = log_s.im;
        } else if (log_s.im - prev_arg).abs() > MAX_ARG_STEP {
            return Err(Error::Branch(format!(
                "argument of S jumps by {:.3} near t = {t:.6}; the loop must enclose t = 0 and t = 1",
                (log_s.im - prev_arg).abs()
            )));
        }
        prev_arg = log_s.im;
        acc += (exponent * log_s).exp() / t * (t - c.center);
    }
    if (first_arg - prev_arg).abs() > MAX_ARG_STEP {
        return Err(Error::Branch("S(u; t)^(z+1) does not close up on this contour".into()));
    }
    Ok(acc / n as f64)
}

/// `K(u, z) = (1/2πi) ∮ S(u; t)^{z+1} dt/t`.
///
/// The loop must surround both `t = 0` and `t = 1` (and not `1/u`); on such a
/// loop the power is single-valued, and it is equivalent to the path that
/// leaves the origin, turns once around `t = 1` and returns. The branch is the
/// one with `(t/(t−1))^{z+1} → 1` as `t → ∞`.
pub fn kernel_via_contour(u: Complex64, z: Complex64, c: &ContourSpec, tol: f64) -> Result<Evaluation> {
    c.validate()?;
    if !c.encloses(Complex64::one()) || !c.encloses(Complex64::zero()) {
        return Err(Error::Domain("kernel contour must enclose t = 0 and t = 1".into()));
    }
    if !u.is_zero() && (u.inv() - c.center).norm() <= c.radius {
        return Err(Error::Domain(format!("pole 1/u = {} lies on or inside the contour", u.inv())));
    }
    let mut n = c.nodes;
    let mut value = kernel_pass(u, z, c, n)?;
    loop {
        let n2 = 2 * n;
        if n2 > MAX_NODES {
            return Err(Error::NonConvergence(format!("node cap {MAX_NODES} reached")));
        }
        let next = kernel_pass(u, z, c, n2)?;
        let diff = (next - value).norm();
        value = next;
        n = n2;
        if converged(diff, value, tol) {
            return Ok(Evaluation { value, error_estimate: diff, terms_used: n, degree_reached: 0 });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss2f1::{hyp2f1, kernel_K, Hyp2F1Params};
    use approx::assert_relative_eq;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn s_map_values_and_symmetries() {
        assert_relative_eq!(s_map(c(0.1), c(2.0)).unwrap().re, 2.5, max_relative = 1e-15);
        let (a, t) = (c(0.3), c(2.0));
        let s = s_map(a, t).unwrap();
        assert!((s - s_map(a, (a * t).inv()).unwrap()).norm() < 1e-14);
        assert!((s - s_map(a.inv(), t.inv()).unwrap() / a).norm() < 1e-14);
        // partial fractions
        let pf = ((1.0 - t).inv() - (1.0 - a * t).inv()) / (a - 1.0);
        assert!((s - pf).norm() < 1e-14);
    }

    #[test]
    fn s_map_poles() {
        assert!(matches!(s_map(c(0.5), c(1.0)), Err(Error::Pole { .. })));
        assert!(matches!(s_map(c(0.5), c(2.0)), Err(Error::Pole { .. })));
        assert!(matches!(s_map(c(0.0), c(1.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn s_map_multi_cases() {
        let t = [c(2.0), c(3.0)];
        assert_relative_eq!(s_map_multi(&[c(0.1), c(0.2)], &t).unwrap().re, 8.0, max_relative = 1e-14);
        assert_eq!(s_map_multi(&[c(0.3)], &[c(2.0)]).unwrap(), s_map(c(0.3), c(2.0)).unwrap());
        // all-zero parameters: a chain of t/(t-1) maps
        let ts = [c(2.0), c(3.0), c(5.0)];
        let v = s_map_multi(&[c(0.0); 3], &ts).unwrap();
        assert_relative_eq!(v.re, 2.0, max_relative = 1e-15);
        // pole reached after one recursion step: S(0.2;3) = 3.75, then S(3.75 a_1; t_1) with t_1 = 1
        match s_map_multi(&[c(0.1), c(0.2)], &[c(1.0), c(3.0)]) {
            Err(Error::Pole { depth, .. }) => assert_eq!(depth, 1),
            other => panic!("expected a pole, got {other:?}"),
        }
    }

    #[test]
    fn residue_integrals() {
        let circle = ContourSpec::new(c(1.0), 0.5, 16).unwrap();
        let r = contour_integral(|t| Ok((t - 1.0).inv()), &circle, 1e-14).unwrap();
        assert!((r.value - c(1.0)).norm() < 1e-14);
        let f = |t: Complex64| Ok(((t - 1.0) * (1.0 - 0.5 * t)).inv());
        let r = contour_integral(f, &circle, 1e-14).unwrap();
        assert!((r.value - c(2.0)).norm() < 1e-13);
        let g = |t: Complex64| Ok(((t - 1.0) * (1.0 - 0.5 * t)).inv() + t.inv());
        let r = contour_integral(g, &circle, 1e-14).unwrap();
        assert!((r.value - c(2.0)).norm() < 1e-13);
    }

    #[test]
    fn trapezoid_error_is_geometric() {
        // successive differences shrink at least quadratically under doubling
        let circle = ContourSpec::new(c(1.0), 0.5, 16).unwrap();
        let f = |t: Complex64| ((t - 1.0) * (1.0 - 0.5 * t)).inv();
        let trap = |n: usize| -> Complex64 {
            (0..n).map(|k| {
                let t = circle.node(k, n);
                f(t) * (t - circle.center)
            }).sum::<Complex64>()
                / n as f64
        };
        let d1 = (trap(8) - trap(4)).norm();
        let d2 = (trap(16) - trap(8)).norm();
        assert!(d2 <= d1 * d1 * 10.0 || d2 < 1e-15, "{d1} {d2}");
    }

    #[test]
    fn contour_spec_validation() {
        assert!(ContourSpec::new(c(1.0), 0.5, 12).is_err());
        assert!(ContourSpec::new(c(1.0), 0.5, 48).is_err());
        assert!(ContourSpec::new(c(1.0), -0.5, 64).is_err());
    }

    #[test]
    fn node_cap_reports_nonconvergence() {
        let circle = ContourSpec::new(c(1.0), 0.5, 16).unwrap();
        // a pole sitting almost on the circle converges far too slowly
        let f = |t: Complex64| Ok((t - 1.4999999).inv());
        assert!(matches!(contour_integral(f, &circle, 1e-15), Err(Error::NonConvergence(_))));
    }

    #[test]
    fn recursion_from_unit() {
        let e = gn_via_recursion(&CPoint::real(&[0.5]), &UnitEvaluator, &ContourSpec::default(), 1e-13).unwrap();
        assert!((e.value - c(2.0)).norm() < 1e-12);
    }

    #[test]
    fn multicontour_one_variable() {
        let e = gn_via_multicontour(&CPoint::real(&[0.5]), &ContourSpec::multicontour_default(), 1e-12).unwrap();
        assert!((e.value - c(2.0)).norm() < 1e-11);
    }

    #[test]
    fn multicontour_rejects_large_dimension() {
        let r = gn_via_multicontour(&CPoint::real(&[0.01; 4]), &ContourSpec::multicontour_default(), 1e-8);
        assert!(matches!(r, Err(Error::UnsupportedDimension(4))));
    }

    #[test]
    fn kernel_contour_matches_series() {
        let k = ContourSpec::kernel_default();
        let v = kernel_via_contour(c(0.2), c(0.0), &k, 1e-13).unwrap();
        assert!((v.value - c(1.25)).norm() < 1e-12);
        let v = kernel_via_contour(c(0.2), c(1.0), &k, 1e-13).unwrap();
        let s = hyp2f1(&Hyp2F1Params::real(2.0, 2.0, 1.0, 0.2), 1e-15).unwrap();
        assert!((v.value - s.value).norm() < 1e-8 * s.value.norm());
        let v = kernel_via_contour(c(0.1), c(1.5), &k, 1e-13).unwrap();
        let s = kernel_K(c(0.1), c(1.5), 1e-15).unwrap();
        assert!((v.value - s.value).norm() < 1e-8 * s.value.norm());
    }

    #[test]
    fn kernel_contour_around_one_only_is_refused() {
        let around_one = ContourSpec::new(c(1.0), 0.5, 64).unwrap();
        assert!(kernel_via_contour(c(0.1), c(1.5), &around_one, 1e-10).is_err());
    }

    #[test]
    fn kernel_branch_tracking_detects_multivalued_loop() {
        // forcing a pass on a circle around t = 1 alone: the tracked logarithm
        // does not close up for non-integer exponents
        let around_one = ContourSpec::new(c(1.0), 0.5, 64).unwrap();
        assert!(matches!(kernel_pass(c(0.1), c(1.5), &around_one, 64), Err(Error::Branch(_))));
    }
}
