//! The involutions `T_{n,j}`, the quadratic form `Q_n`, the invariant `u`,
//! the normalised function `H_n = √Q_n · G_n`, and checks of the
//! (quasi-)invariance relations.
//!
//! The algebraic pieces are generic over any number type, so the same code
//! runs on `Complex64` and, for exact identity checks, on `BigRational`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Zero};

use crate::closedforms::{g1, g3_hypergeometric_factor};
use crate::error::{Error, Result};
use crate::gauss2f1::SERIES_RADIUS;
use crate::multiseries::{eval_gn_series, in_omega_n, CPoint, TruncationSpec};

/// A point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint(pub Vec<BigRational>);

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        assert!(!coords.is_empty());
        RationalPoint(coords)
    }

    /// From `(numerator, denominator)` pairs.
    pub fn from_fracs(fracs: &[(i64, i64)]) -> Self {
        RationalPoint(fracs.iter().map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q))).collect())
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RationalPoint(v.iter().map(|&p| BigRational::from_integer(BigInt::from(p))).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.0
    }

    pub fn to_cpoint(&self) -> CPoint {
        use num_traits::ToPrimitive;
        CPoint::new(self.0.iter().map(|r| Complex64::new(r.to_f64().unwrap(), 0.0)).collect())
    }
}

/// `Q_n(x) = (1 − Σx_j)² − 2 Σ_{i≠j} x_i x_j` (ordered pairs, i.e. `4 Σ_{i<j}`).
pub fn qn<T: Num + Clone>(x: &[T]) -> T {
    let mut e1 = T::zero();
    let mut e2 = T::zero();
    for (i, xi) in x.iter().enumerate() {
        for xj in &x[i + 1..] {
            e2 = e2 + xi.clone() * xj.clone();
        }
        e1 = e1 + xi.clone();
    }
    let one_minus = T::one() - e1;
    let four = T::one() + T::one() + T::one() + T::one();
    one_minus.clone() * one_minus - four * e2
}

/// `T_{n,j}(x) = (x_1/x_j, …, x_{j−1}/x_j, 1/x_j, x_{j+1}/x_j, …)`, `j` 1-based.
pub fn t_involution<T: Num + Clone>(j: usize, x: &[T]) -> Result<Vec<T>> {
    if j == 0 || j > x.len() {
        return Err(Error::Parameter(format!("involution index {j} out of range 1..={}", x.len())));
    }
    let pivot = x[j - 1].clone();
    if pivot.is_zero() {
        return Err(Error::ZeroCoordinate(j));
    }
    Ok(x.iter()
        .enumerate()
        .map(|(i, xi)| if i == j - 1 { T::one() / pivot.clone() } else { xi.clone() / pivot.clone() })
        .collect())
}

/// `u(x) = 64 x_1 x_2 x_3 / Q_3(x)²`.
pub fn u_invariant<T: Num + Clone + FromPrimitive>(x: &[T]) -> Result<T> {
    if x.len() != 3 {
        return Err(Error::UnsupportedDimension(x.len()));
    }
    let q = qn(x);
    if q.is_zero() {
        return Err(Error::SingularQ);
    }
    let prod = x[0].clone() * x[1].clone() * x[2].clone();
    Ok(T::from_i32(64).unwrap() * prod / (q.clone() * q))
}

/// One generator of the group acting on points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Letter {
    /// `T_{n,j}`, 1-based.
    Involution(usize),
    /// New coordinate `i` is old coordinate `σ[i]` (0-based).
    Permutation(Vec<usize>),
}

/// A word in involutions and permutations, applied left to right.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TransformWord {
    pub letters: Vec<Letter>,
}

impl TransformWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        TransformWord { letters }
    }

    pub fn apply<T: Num + Clone>(&self, x: &[T]) -> Result<Vec<T>> {
        let mut p = x.to_vec();
        for l in &self.letters {
            p = match l {
                Letter::Involution(j) => t_involution(*j, &p)?,
                Letter::Permutation(sigma) => {
                    let mut seen = vec![false; p.len()];
                    if sigma.len() != p.len() || sigma.iter().any(|&s| s >= p.len() || std::mem::replace(&mut seen[s], true)) {
                        return Err(Error::Parameter(format!("{sigma:?} is not a permutation of {} items", p.len())));
                    }
                    sigma.iter().map(|&s| p[s].clone()).collect()
                }
            };
        }
        Ok(p)
    }
}

/// Exact check of `Q_n(T_{n,j} x) · x_j² = Q_n(x)`.
pub fn verify_q_covariance(j: usize, x: &RationalPoint) -> Result<bool> {
    let y = t_involution(j, x.as_slice())?;
    let xj = &x.0[j - 1];
    Ok(qn(&y) * xj * xj == qn(x.as_slice()))
}

/// Exact check of `u(T_{3,j} x) = u(x)`.
pub fn verify_u_invariance(j: usize, x: &RationalPoint) -> Result<bool> {
    let y = t_involution(j, x.as_slice())?;
    Ok(u_invariant(&y)? == u_invariant(x.as_slice())?)
}

/// Small negative base point where every square root in play is anchored
/// on its principal value.
const BASE_OFFSET: f64 = 1e-3;
/// Largest change of `arg Q` allowed in one continuation step.
const MAX_STEP_ARG: f64 = std::f64::consts::FRAC_PI_4;
const MIN_STEP: f64 = 1e-12;

/// `√Q_n` and (for `n = 3`) `u`, continued along the straight segment from
/// the base point `(−δ, …, −δ)` to `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackedBranch {
    pub sqrt_q: Complex64,
    pub u: Option<Complex64>,
    pub steps: usize,
}

fn u_crosses_cut(a: Complex64, b: Complex64) -> bool {
    if b.im == 0.0 && b.re >= 1.0 {
        return true;
    }
    if a.im.signum() == b.im.signum() && a.im != 0.0 && b.im != 0.0 {
        return false;
    }
    if a.im == b.im {
        return false;
    }
    let s = a.im / (a.im - b.im);
    let re = a.re + s * (b.re - a.re);
    re >= 1.0
}

/// Continue `√Q_n` from the base point to `x`, refusing paths that run into
/// `Q_n = 0` or (for `n = 3`) carry `u` across `[1, ∞)`.
pub fn track_branch(x: &CPoint) -> Result<TrackedBranch> {
    let n = x.dim();
    let base: Vec<Complex64> = vec![Complex64::new(-BASE_OFFSET, 0.0); n];
    let target = x.as_slice();
    let at = |s: f64| -> Vec<Complex64> { base.iter().zip(target).map(|(b, t)| b + (t - b) * s).collect() };
    let q_scale = 1.0 + target.iter().map(|t| t.norm()).sum::<f64>().powi(2);

    let p0 = at(0.0);
    let mut q = qn(&p0);
    let mut root = q.sqrt();
    let mut u = if n == 3 { Some(u_invariant(&p0)?) } else { None };
    let mut s = 0.0f64;
    let mut h = 1.0 / 64.0;
    let mut steps = 0usize;
    while s < 1.0 {
        let s_next = (s + h).min(1.0);
        let p = at(s_next);
        let q_next = qn(&p);
        if q_next.norm() < 1e-13 * q_scale {
            return Err(Error::BranchPath(format!("path meets Q = 0 near s = {s_next:.6}")));
        }
        let ratio = q_next / q;
        if ratio.arg().abs() > MAX_STEP_ARG {
            h /= 2.0;
            if h < MIN_STEP {
                return Err(Error::BranchPath(format!("arg Q turns too fast near s = {s:.6}")));
            }
            continue;
        }
        if let Some(u_prev) = u {
            let u_next = u_invariant(&p)?;
            if u_crosses_cut(u_prev, u_next) {
                return Err(Error::BranchPath(format!("u crosses the cut [1, inf) near s = {s_next:.6}")));
            }
            u = Some(u_next);
        }
        root *= ratio.sqrt();
        q = q_next;
        s = s_next;
        steps += 1;
        h = (h * 2.0).min(1.0 / 16.0);
    }
    Ok(TrackedBranch { sqrt_q: root, u, steps })
}

/// `G_n(x)` from its closed form with the square root continued by [`track_branch`].
pub fn gn_branch_tracked(x: &CPoint) -> Result<Complex64> {
    match x.dim() {
        1 => g1(x.coord(1)),
        2 => {
            let b = track_branch(x)?;
            Ok(b.sqrt_q.inv())
        }
        3 => {
            let b = track_branch(x)?;
            let f = g3_hypergeometric_factor(b.u.unwrap())?;
            Ok(f / b.sqrt_q)
        }
        n => Err(Error::UnsupportedDimension(n)),
    }
}

/// Residuals of the quasi-invariance check at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiInvarianceReport {
    /// `|G_n(T_{n,j}x) + x_j G_n(x)|`
    pub g_residual: f64,
    /// `|H_n(T_{n,j}x) − H_n(x)|`
    pub h_residual: f64,
    pub g_at_x: Complex64,
    pub g_at_image: Complex64,
}

impl QuasiInvarianceReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.g_residual < tol && self.h_residual < tol
    }
}

/// `G_n(T_{n,j}x) = −x_j G_n(x)` and `H_n(T_{n,j}x) = H_n(x)` with branch-tracked
/// closed forms; `G_n(x)` itself comes from the series whenever `x ∈ Ω_n`.
pub fn verify_quasi_invariance(n: usize, j: usize, x: &CPoint) -> Result<QuasiInvarianceReport> {
    if !(1..=3).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    if x.dim() != n {
        return Err(Error::Parameter(format!("point has dimension {}, expected {n}", x.dim())));
    }
    let image = CPoint::new(t_involution(j, x.as_slice())?);
    let g_x = if in_omega_n(x) {
        eval_gn_series(x, &TruncationSpec::default())?.value
    } else {
        gn_branch_tracked(x)?
    };
    let g_image = gn_branch_tracked(&image)?;
    let xj = x.coord(j);
    let g_residual = (g_image + xj * g_x).norm();

    let (root_x, root_image) = if n == 1 {
        (Complex64::one() - x.coord(1), Complex64::one() - image.coord(1))
    } else {
        (track_branch(x)?.sqrt_q, track_branch(&image)?.sqrt_q)
    };
    let h_residual = (root_image * g_image - root_x * g_x).norm();
    Ok(QuasiInvarianceReport { g_residual, h_residual, g_at_x: g_x, g_at_image: g_image })
}

/// `||G_n(T x)| − |x_j| |G_n(x)||` with principal branches throughout; holds
/// independently of which sheet the relation is read on.
pub fn modulus_quasi_invariance(j: usize, x: &CPoint) -> Result<f64> {
    let image = CPoint::new(t_involution(j, x.as_slice())?);
    let g = |p: &CPoint| crate::closedforms::gn_closed(p);
    Ok((g(&image)?.norm() - x.coord(j).norm() * g(x)?.norm()).abs())
}

/// `H_n(x) = √Q_n(x) G_n(x)` on the principal branch, `n ≤ 3`.
pub fn hn(x: &CPoint) -> Result<Complex64> {
    match x.dim() {
        1 => {
            let q = qn(x.as_slice());
            Ok(q.sqrt() * g1(x.coord(1))?)
        }
        2 => {
            let q = qn(x.as_slice());
            Ok(q.sqrt() * crate::closedforms::g2(x.coord(1), x.coord(2))?)
        }
        3 => {
            let q = qn(x.as_slice());
            if q.is_zero() {
                return Err(Error::SingularQ);
            }
            let u = u_invariant(x.as_slice())?;
            g3_hypergeometric_factor(u)
        }
        n => Err(Error::UnsupportedDimension(n)),
    }
}

/// Whether `u` is somewhere `₂F₁(¼, ¾; 1; u)` can be evaluated on the principal sheet.
pub fn u_supported(u: Complex64) -> bool {
    if u.im == 0.0 && u.re >= 1.0 {
        return false;
    }
    u.norm().min((u / (u - 1.0)).norm()) < SERIES_RADIUS
}

/// Rational `p/q` helper.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_one() -> BigRational {
    BigRational::one()
}
