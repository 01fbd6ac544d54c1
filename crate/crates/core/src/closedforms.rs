//! Closed forms of `G_1`, `G_2`, `G_3`, the elliptic reduction of `G_3`, the
//! Appell-series representations of `G_2`/`G_3`, and the ODE identities
//! satisfied by `φ(t) = ₂F₁(¼, ¾; 1; 64t)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Zero};

use crate::contour::GnEvaluator;
use crate::error::{Error, Result};
use crate::gauss2f1::{hyp2f1, hyp2f1_derivative, Hyp2F1Params};
use crate::multiseries::{eval_f1_series, eval_f2_series, eval_f4_series, CPoint, Evaluation, TruncationSpec};
use crate::symmetry::{qn, u_invariant, u_supported};

const TOL: f64 = 1e-16;

fn on_negative_axis(z: Complex64) -> bool {
    z.im == 0.0 && z.re < 0.0
}

/// `G_1(x) = 1/(1−x)`.
pub fn g1(x: Complex64) -> Result<Complex64> {
    if x == Complex64::one() {
        return Err(Error::Pole { depth: 0, detail: "G_1 has a pole at x = 1".into() });
    }
    Ok((Complex64::one() - x).inv())
}

/// `G_2(x_1, x_2) = 1/√Q_2`, principal branch.
pub fn g2(x1: Complex64, x2: Complex64) -> Result<Complex64> {
    let q = qn(&[x1, x2]);
    if q.is_zero() {
        return Err(Error::SingularQ);
    }
    if on_negative_axis(q) {
        return Err(Error::BranchCut(format!("Q_2 = {q} lies on the cut of the principal square root")));
    }
    Ok(q.sqrt().inv())
}

/// `₂F₁(¼, ¾; 1; u)`, i.e. `H_3` as a function of `u`.
pub fn g3_hypergeometric_factor(u: Complex64) -> Result<Complex64> {
    if u.im == 0.0 && u.re >= 1.0 {
        return Err(Error::BranchCut(format!("u = {u} lies on [1, inf)")));
    }
    Ok(hyp2f1(&Hyp2F1Params::new(0.25.into(), 0.75.into(), 1.0.into(), u), TOL)?.value)
}

/// `G_3(x) = ₂F₁(¼, ¾; 1; u(x)) / √Q_3(x)`, principal branches.
pub fn g3(x: &CPoint) -> Result<Complex64> {
    if x.dim() != 3 {
        return Err(Error::UnsupportedDimension(x.dim()));
    }
    let q = qn(x.as_slice());
    if q.is_zero() {
        return Err(Error::SingularQ);
    }
    if on_negative_axis(q) {
        return Err(Error::BranchCut(format!("Q_3 = {q} lies on the cut of the principal square root")));
    }
    let u = u_invariant(x.as_slice())?;
    Ok(g3_hypergeometric_factor(u)? / q.sqrt())
}

/// Dispatch to [`g1`], [`g2`] or [`g3`] by dimension.
pub fn gn_closed(x: &CPoint) -> Result<Complex64> {
    match x.dim() {
        1 => g1(x.coord(1)),
        2 => g2(x.coord(1), x.coord(2)),
        3 => g3(x),
        n => Err(Error::UnsupportedDimension(n)),
    }
}

/// Closed forms as a [`GnEvaluator`], `n ≤ 3`.
#[derive(Debug, Clone, Copy)]
pub struct ClosedFormEvaluator {
    pub n: usize,
}

impl GnEvaluator for ClosedFormEvaluator {
    fn dim(&self) -> usize {
        self.n
    }

    fn in_domain(&self, x: &CPoint) -> bool {
        match self.n {
            1 => x.coord(1) != Complex64::one(),
            2 => qn(x.as_slice()).re > 0.0,
            3 => qn(x.as_slice()).re > 0.0 && u_invariant(x.as_slice()).map(u_supported).unwrap_or(false),
            _ => false,
        }
    }

    fn eval(&self, x: &CPoint) -> Result<Complex64> {
        gn_closed(x)
    }
}

/// Roots and normal-form data of the quartic
/// `P(x; t) = ((1−t)(1−x_3 t) + (x_1+x_2) t)² − 4 x_1 x_2 t²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticReduction {
    pub x: [Complex64; 3],
    pub a_plus: Complex64,
    pub a_minus: Complex64,
    pub t1: Complex64,
    pub t2: Complex64,
    pub t3: Complex64,
    pub t4: Complex64,
    pub q: Complex64,
    pub u: Complex64,
    pub lambda: Complex64,
    pub mu: Complex64,
}

/// Elliptic reduction with the principal `√(x_1 x_2)`.
pub fn elliptic_reduction(x: &CPoint) -> Result<EllipticReduction> {
    elliptic_reduction_with_branch(x, false)
}

/// As [`elliptic_reduction`]; `flip` takes `−√(x_1 x_2)` instead, which swaps
/// `a_+ ↔ a_−` and hence relabels `t_1 ↔ t_2`, `t_3 ↔ t_4`.
pub fn elliptic_reduction_with_branch(x: &CPoint, flip: bool) -> Result<EllipticReduction> {
    if x.dim() != 3 {
        return Err(Error::UnsupportedDimension(x.dim()));
    }
    let (x1, x2, x3) = (x.coord(1), x.coord(2), x.coord(3));
    if x3.is_zero() {
        return Err(Error::ZeroX3);
    }
    let q = qn(x.as_slice());
    if q.is_zero() {
        return Err(Error::SingularQ);
    }
    let u = u_invariant(x.as_slice())?;
    let mut r = (x1 * x2).sqrt();
    if flip {
        r = -r;
    }
    let s = 1.0 - x1 - x2 + x3;
    let a_plus = s + 2.0 * r;
    let a_minus = s - 2.0 * r;
    let dp = (a_plus * a_plus - 4.0 * x3).sqrt();
    let dm = (a_minus * a_minus - 4.0 * x3).sqrt();
    let t1 = (a_plus - dp) / (2.0 * x3);
    let t3 = (a_plus + dp) / (2.0 * x3);
    let t2 = (a_minus - dm) / (2.0 * x3);
    let t4 = (a_minus + dm) / (2.0 * x3);
    let lambda = (t4 - t3) * (t2 - t1) / ((t4 - t1) * (t2 - t3));
    let mu = (t2 - t3) * (t4 - t1) * x3 * x3;
    if !(lambda.is_finite() && mu.is_finite()) {
        return Err(Error::Domain("quartic has a repeated root".into()));
    }
    Ok(EllipticReduction { x: [x1, x2, x3], a_plus, a_minus, t1, t2, t3, t4, q, u, lambda, mu })
}

impl EllipticReduction {
    /// The defining quartic at `t`.
    pub fn quartic(&self, t: Complex64) -> Complex64 {
        let [x1, x2, x3] = self.x;
        let a = (1.0 - t) * (1.0 - x3 * t) + (x1 + x2) * t;
        a * a - 4.0 * x1 * x2 * t * t
    }

    /// `x_3² Π (t − t_i)`.
    pub fn factored(&self, t: Complex64) -> Complex64 {
        let x3 = self.x[2];
        x3 * x3 * (t - self.t1) * (t - self.t2) * (t - self.t3) * (t - self.t4)
    }

    fn sqrt_one_minus_u(&self) -> Complex64 {
        (1.0 - self.u).sqrt()
    }

    /// `(1 − √(1−u)) / (1 + √(1−u))`.
    pub fn lambda_closed(&self) -> Complex64 {
        let w = self.sqrt_one_minus_u();
        (1.0 - w) / (1.0 + w)
    }

    /// `−Q (1 + √(1−u)) / 2`.
    pub fn mu_closed(&self) -> Complex64 {
        -self.q * (1.0 + self.sqrt_one_minus_u()) / 2.0
    }

    /// Relative residuals of the structural identities: factorization at five
    /// nodes, cross-ratio `λ`, product `μ`, and `2x_3²(t_4−t_1)(t_2−t_3) = −Q(1+√(1−u))`.
    pub fn invariant_residuals(&self) -> ReductionResiduals {
        let rel = |a: Complex64, b: Complex64| (a - b).norm() / b.norm().max(f64::MIN_POSITIVE);
        let samples = [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(-1.0, 0.5),
            Complex64::new(2.0, -1.0),
            Complex64::new(0.3, 0.7),
        ];
        let factorization = samples
            .iter()
            .map(|&t| {
                let p = self.quartic(t);
                (self.factored(t) - p).norm() / p.norm().max(1.0)
            })
            .fold(0.0, f64::max);
        let x3 = self.x[2];
        let two_product = 2.0 * x3 * x3 * (self.t4 - self.t1) * (self.t2 - self.t3);
        ReductionResiduals {
            factorization,
            cross_ratio: rel(self.lambda, self.lambda_closed()),
            mu_product: rel(self.mu, self.mu_closed()),
            root_gap_identity: rel(two_product, -self.q * (1.0 + self.sqrt_one_minus_u())),
        }
    }
}

/// Output of [`EllipticReduction::invariant_residuals`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionResiduals {
    pub factorization: f64,
    pub cross_ratio: f64,
    pub mu_product: f64,
    pub root_gap_identity: f64,
}

impl ReductionResiduals {
    pub fn max(&self) -> f64 {
        self.factorization.max(self.cross_ratio).max(self.mu_product).max(self.root_gap_identity)
    }
}

/// Deviations from the small-`x` limits at `x = (ε, ε, ε)`:
/// `t_1, t_2 → 1`, `ε t_3, ε t_4 → 1`, `λ → 0`, `μ → −1`.
pub fn reduction_limits(eps: f64) -> Result<[f64; 6]> {
    let r = elliptic_reduction(&CPoint::real(&[eps, eps, eps]))?;
    Ok([
        (r.t1 - 1.0).norm(),
        (r.t2 - 1.0).norm(),
        (r.t3 * eps - 1.0).norm(),
        (r.t4 * eps - 1.0).norm(),
        r.lambda.norm(),
        (r.mu + 1.0).norm(),
    ])
}

/// `G_3 = ₂F₁(½, ½; 1; λ) / √(−μ)`, the complete elliptic integral of the
/// normal form.
pub fn g3_via_elliptic_integral(x: &CPoint, tol: f64) -> Result<Evaluation> {
    g3_via_elliptic_branch(x, false, tol)
}

/// [`g3_via_elliptic_integral`] with an explicit `√(x_1 x_2)` branch.
pub fn g3_via_elliptic_branch(x: &CPoint, flip: bool, tol: f64) -> Result<Evaluation> {
    let r = elliptic_reduction_with_branch(x, flip)?;
    if r.lambda.im == 0.0 && r.lambda.re >= 1.0 {
        return Err(Error::BranchCut(format!("lambda = {} lies on [1, inf)", r.lambda)));
    }
    let k = hyp2f1(&Hyp2F1Params::new(0.5.into(), 0.5.into(), 1.0.into(), r.lambda), tol)?;
    let scale = (-r.mu).sqrt().inv();
    Ok(Evaluation { value: scale * k.value, error_estimate: k.error_estimate * scale.norm(), ..k })
}

/// `G_3(x) = Σ_{k=0}^{K} F_4(k+1, k+1, 1, 1; x_1, x_2) x_3^k`.
///
/// The error estimate adds the size of the last retained term to the
/// accumulated series estimates.
pub fn g3_f4_expansion(x: &CPoint, k_max: usize, trunc: &TruncationSpec) -> Result<Evaluation> {
    if x.dim() != 3 {
        return Err(Error::UnsupportedDimension(x.dim()));
    }
    let (x1, x2, x3) = (x.coord(1), x.coord(2), x.coord(3));
    let mut sum = Complex64::zero();
    let mut err = 0.0;
    let mut terms = 0;
    let mut power = Complex64::one();
    let mut last = 0.0;
    for k in 0..=k_max {
        let a: Complex64 = ((k + 1) as f64).into();
        let f = eval_f4_series(a, a, 1.0.into(), 1.0.into(), x1, x2, trunc)?;
        let term = f.value * power;
        sum += term;
        err += f.error_estimate * power.norm();
        terms += f.terms_used;
        last = term.norm();
        power *= x3;
        if power.is_zero() {
            break;
        }
    }
    Ok(Evaluation { value: sum, error_estimate: err + last, terms_used: terms, degree_reached: k_max })
}

/// `F_4(α, β, γ, γ′; x, y) = Σ_ℓ (α)_ℓ(β)_ℓ/((γ)_ℓ ℓ!) ₂F₁(α+ℓ, β+ℓ; γ′; y) x^ℓ`,
/// summed to `terms` outer terms.
pub fn f4_via_gauss_resummation(
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
    gamma_prime: Complex64,
    x: Complex64,
    y: Complex64,
    terms: usize,
) -> Result<Complex64> {
    let mut coeff = Complex64::one();
    let mut sum = Complex64::zero();
    for l in 0..terms {
        let lf = l as f64;
        let f = hyp2f1(&Hyp2F1Params::new(alpha + lf, beta + lf, gamma_prime, y), TOL)?;
        sum += coeff * f.value;
        coeff *= (alpha + lf) * (beta + lf) / ((gamma + lf) * (lf + 1.0)) * x;
    }
    Ok(sum)
}

/// `G_2` through `F_2`: `(1+√x_2)^{−2} F_2(1, (1, ½), (1, 1), x_1/(1+√x_2)², 4√x_2/(1+√x_2)²)`.
pub fn g2_via_appell_f2(x1: Complex64, x2: Complex64, trunc: &TruncationSpec) -> Result<Complex64> {
    let s = x2.sqrt();
    let d = (1.0 + s) * (1.0 + s);
    let one = Complex64::one();
    let f = eval_f2_series(one, [one, 0.5.into()], [one, one], x1 / d, 4.0 * s / d, trunc)?;
    Ok(f.value / d)
}

/// `G_2` through `F_1`:
/// `(1+√x_2)^{−2} (1 − 4√x_2/(1+√x_2)²)^{−½} F_1(1, (½, ½), 1, x_1/(1+√x_2)², x_1/(1−√x_2)²)`.
pub fn g2_via_appell_f1(x1: Complex64, x2: Complex64, trunc: &TruncationSpec) -> Result<Complex64> {
    let s = x2.sqrt();
    let dp = (1.0 + s) * (1.0 + s);
    let dm = (1.0 - s) * (1.0 - s);
    let half: Complex64 = 0.5.into();
    let one = Complex64::one();
    let f = eval_f1_series(one, [half, half], one, x1 / dp, x1 / dm, trunc)?;
    Ok(f.value / dp / (1.0 - 4.0 * s / dp).sqrt())
}

/// `F_2(α, (β, β′), (γ, α), x_1, x_2)` and
/// `(1−x_2)^{−β′} F_1(β, (α−β′, β′), γ, x_1, x_1/(1−x_2))`.
pub fn f2_f1_reduction_sides(
    alpha: Complex64,
    beta: Complex64,
    beta_prime: Complex64,
    gamma: Complex64,
    x1: Complex64,
    x2: Complex64,
    trunc: &TruncationSpec,
) -> Result<(Complex64, Complex64)> {
    let lhs = eval_f2_series(alpha, [beta, beta_prime], [gamma, alpha], x1, x2, trunc)?.value;
    let f1 = eval_f1_series(beta, [alpha - beta_prime, beta_prime], gamma, x1, x1 / (1.0 - x2), trunc)?.value;
    Ok((lhs, (1.0 - x2).powc(-beta_prime) * f1))
}

fn small<T: FromPrimitive>(k: i64) -> T {
    T::from_i64(k).expect("small integer constant")
}

/// `(A_2, A_1, A_0)` for the coordinate `t = x_{var}` (1-based), with
/// `v = x_1 x_2 x_3 / Q²` and `D = ∂_t Q / Q`:
/// `A_2 = (1/t − 4D + 4tD²)v²`, `A_1 = (1/t − 4t/Q − 7D + 8tD²)v`,
/// `A_0 = −t/Q − D/2 + ¾tD²`.
pub fn a_coefficients<T: Num + Clone + FromPrimitive>(var: usize, x: &[T]) -> Result<[T; 3]> {
    if x.len() != 3 {
        return Err(Error::UnsupportedDimension(x.len()));
    }
    if !(1..=3).contains(&var) {
        return Err(Error::Parameter(format!("variable index {var} out of range 1..=3")));
    }
    let t = x[var - 1].clone();
    if t.is_zero() {
        return Err(Error::ZeroCoordinate(var));
    }
    let q = qn(x);
    if q.is_zero() {
        return Err(Error::SingularQ);
    }
    let d = log_derivative_q(var, x);
    let v = x[0].clone() * x[1].clone() * x[2].clone() / (q.clone() * q.clone());
    let inv_t = T::one() / t.clone();
    let td2 = t.clone() * d.clone() * d.clone();
    let a2 = (inv_t.clone() - small::<T>(4) * d.clone() + small::<T>(4) * td2.clone()) * v.clone() * v.clone();
    let a1 = (inv_t - small::<T>(4) * t.clone() / q.clone() - small::<T>(7) * d.clone() + small::<T>(8) * td2.clone()) * v;
    let a0 = T::zero() - t / q - d / small::<T>(2) + small::<T>(3) * td2 / small::<T>(4);
    Ok([a2, a1, a0])
}

/// `D_t Q = ∂_t Q / Q = 2(x_1+x_2+x_3 − 1 − 2(x_1+x_2+x_3 − t)) / Q`.
pub fn log_derivative_q<T: Num + Clone>(var: usize, x: &[T]) -> T {
    let two = T::one() + T::one();
    let e1 = x.iter().cloned().fold(T::zero(), |a, b| a + b);
    let others = e1.clone() - x[var - 1].clone();
    two.clone() * (e1 - T::one() - two * others) / qn(x)
}

/// Both sides of the two first-derivative identities relating the `x` and `y`
/// log-derivatives of `Q`:
/// `D_x Q − D_y Q = 4(x−y)/Q` and
/// `x(D_x Q)² − y(D_y Q)² = 4(x−y)/Q + 16(x−y) z / Q²`.
pub fn log_derivative_identities(x: &[BigRational]) -> Result<[(BigRational, BigRational); 2]> {
    if x.len() != 3 {
        return Err(Error::UnsupportedDimension(x.len()));
    }
    let q = qn(x);
    if q.is_zero() {
        return Err(Error::SingularQ);
    }
    let (a, b, c) = (&x[0], &x[1], &x[2]);
    let dx = log_derivative_q(1, x);
    let dy = log_derivative_q(2, x);
    let four = small::<BigRational>(4);
    let first = (&dx - &dy, &four * (a - b) / &q);
    let second = (
        a * &dx * &dx - b * &dy * &dy,
        &four * (a - b) / &q + small::<BigRational>(16) * (a - b) * c / (&q * &q),
    );
    Ok([first, second])
}

/// `A_{x,i} − A_{y,i}` against `(x−y)/(xy) · {(64v−1)v², (128v−1)v, 12v}`.
pub fn a_difference_sides<T: Num + Clone + FromPrimitive>(x: &[T]) -> Result<[(T, T); 3]> {
    let ax = a_coefficients(1, x)?;
    let ay = a_coefficients(2, x)?;
    let q = qn(x);
    let v = x[0].clone() * x[1].clone() * x[2].clone() / (q.clone() * q);
    let scale = (x[0].clone() - x[1].clone()) / (x[0].clone() * x[1].clone());
    let expected = [
        (small::<T>(64) * v.clone() - T::one()) * v.clone() * v.clone(),
        (small::<T>(128) * v.clone() - T::one()) * v.clone(),
        small::<T>(12) * v,
    ];
    let [ax2, ax1, ax0] = ax;
    let [ay2, ay1, ay0] = ay;
    let [e2, e1, e0] = expected;
    Ok([
        (ax2 - ay2, scale.clone() * e2),
        (ax1 - ay1, scale.clone() * e1),
        (ax0 - ay0, scale * e0),
    ])
}

/// Exact check of `(a_+ a_−)² − 4x_3(a_+² + a_−²) + 16x_3² = Q² − 64x_1x_2x_3`,
/// i.e. `(a_+² − 4x_3)(a_−² − 4x_3) = Q²(1 − u)`, with the `√(x_1x_2)` terms
/// eliminated through `a_+ a_− = s² − 4x_1x_2` and `a_+² + a_−² = 2s² + 8x_1x_2`,
/// `s = 1 − x_1 − x_2 + x_3`.
pub fn root_discriminant_identity_exact(x: &[BigRational]) -> Result<bool> {
    if x.len() != 3 {
        return Err(Error::UnsupportedDimension(x.len()));
    }
    let (x1, x2, x3) = (&x[0], &x[1], &x[2]);
    let one = BigRational::one();
    let s = &one - x1 - x2 + x3;
    let r2 = x1 * x2;
    let four = small::<BigRational>(4);
    let prod = &s * &s - &four * &r2;
    let sumsq = small::<BigRational>(2) * &s * &s + small::<BigRational>(8) * &r2;
    let lhs = &prod * &prod - &four * x3 * sumsq + small::<BigRational>(16) * x3 * x3;
    let q = qn(x);
    let rhs = &q * &q - small::<BigRational>(64) * x1 * x2 * x3;
    Ok(lhs == rhs)
}

/// `|(a_+² − 4x_3)(a_−² − 4x_3) − Q²(1 − u)|`, relative to `|Q²|`.
pub fn root_discriminant_residual(x: &CPoint) -> Result<f64> {
    let r = elliptic_reduction(x)?;
    let x3 = r.x[2];
    let lhs = (r.a_plus * r.a_plus - 4.0 * x3) * (r.a_minus * r.a_minus - 4.0 * x3);
    let q2 = r.q * r.q;
    Ok((lhs - q2 * (1.0 - r.u)).norm() / q2.norm())
}

/// `φ(t) = ₂F₁(¼, ¾; 1; 64t)` and its first two derivatives in `t`.
pub fn phi_with_derivatives(t: Complex64) -> Result<[Complex64; 3]> {
    let z = 64.0 * t;
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(Error::Domain(format!("64t = {z} lies on [1, inf)")));
    }
    let p = Hyp2F1Params::new(0.25.into(), 0.75.into(), 1.0.into(), z);
    let f = hyp2f1(&p, TOL)?.value;
    let f1 = hyp2f1_derivative(&p, 1, TOL)?.value * 64.0;
    let f2 = hyp2f1_derivative(&p, 2, TOL)?.value * 4096.0;
    Ok([f, f1, f2])
}

/// `t(64t−1)ψ′ + t(64t−1)ψ² + (128t−1)ψ + 12` with `ψ = φ′/φ`.
pub fn riccati_residual(t: Complex64) -> Result<Complex64> {
    let [f, f1, f2] = phi_with_derivatives(t)?;
    let psi = f1 / f;
    let dpsi = f2 / f - psi * psi;
    let c = t * (64.0 * t - 1.0);
    Ok(c * dpsi + c * psi * psi + (128.0 * t - 1.0) * psi + 12.0)
}

/// `t(64t−1)φ″ + (128t−1)φ′ + 12φ`.
pub fn hypergeo_ode_residual(t: Complex64) -> Result<Complex64> {
    let [f, f1, f2] = phi_with_derivatives(t)?;
    Ok(t * (64.0 * t - 1.0) * f2 + (128.0 * t - 1.0) * f1 + 12.0 * f)
}

/// `ψ(0) = φ′(0)/φ(0) = 64 · (¼ · ¾)/1`, exactly.
pub fn psi_at_zero() -> BigRational {
    let a = BigRational::new(BigInt::from(1), BigInt::from(4));
    let b = BigRational::new(BigInt::from(3), BigInt::from(4));
    BigRational::from_integer(BigInt::from(64)) * a * b
}

/// `|Σ_{k≤N} P_k(z) r^k − G_2(x_1, x_2)|` with `z = (x_1+x_2)/(x_1−x_2)`,
/// `r = x_1 − x_2` and `P_k` the Legendre polynomials.
pub fn legendre_generating_check(x1: f64, x2: f64, terms: usize) -> Result<f64> {
    if x1 == x2 {
        return Err(Error::Domain("x1 = x2 makes z infinite".into()));
    }
    let r = x1 - x2;
    let z = (x1 + x2) / r;
    let growth = z.abs() + (z * z - 1.0).max(0.0).sqrt();
    if r.abs() * growth >= 1.0 {
        return Err(Error::Domain(format!("|r| (|z| + sqrt(z^2-1)) = {:.6} is not below 1", r.abs() * growth)));
    }
    let (mut p_prev, mut p) = (1.0, z);
    let mut sum = 1.0;
    let mut rk = 1.0;
    for k in 1..=terms {
        rk *= r;
        sum += p * rk;
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * z * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = next;
    }
    let g = g2(x1.into(), x2.into())?;
    Ok((Complex64::from(sum) - g).norm())
}
