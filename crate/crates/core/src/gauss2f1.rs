//! Gauss `₂F₁`, the Pfaff maps used by the `G_3` reduction, and the kernel
//! `K(u, z) = ₂F₁(z+1, z+1; 1; u)` with its polynomial coefficients `P_k`.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::multiseries::Evaluation;

/// Largest `|z|` (after an optional Pfaff map) the direct series is run at.
pub const SERIES_RADIUS: f64 = 0.9;

const MAX_TERMS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Params {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub z: Complex64,
}

impl Hyp2F1Params {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Self {
        Hyp2F1Params { a, b, c, z }
    }

    pub fn real(a: f64, b: f64, c: f64, z: f64) -> Self {
        Hyp2F1Params::new(a.into(), b.into(), c.into(), z.into())
    }
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Plain Gauss series. `tol` is absolute for `|value| ≤ 1`, relative above.
///
/// The tail after term `k` is bounded by `|t_{k+1}| / (1 - q)` with `q` the
/// larger of the current term ratio and `|z|`; this is only trusted once `k`
/// is past the parameters and the ratio has dropped below one, after which it
/// moves monotonically toward `|z|`.
pub(crate) fn series(a: Complex64, b: Complex64, c: Complex64, z: Complex64, tol: f64) -> Result<Evaluation> {
    let zn = z.norm();
    if zn >= 1.0 {
        return Err(Error::Domain(format!("series needs |z| < 1, got {zn}")));
    }
    let mut term = Complex64::one();
    let mut sum = Complex64::one();
    let settle = 2.0 * a.norm().max(b.norm()).max(c.norm()) + 10.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        term *= ratio;
        if term.is_zero() {
            // terminating series
            return Ok(Evaluation { value: sum, error_estimate: 0.0, terms_used: k + 1, degree_reached: k });
        }
        sum += term;
        if kf > settle {
            let q = ratio.norm().max(zn);
            if q >= 1.0 {
                continue;
            }
            let next = (term * (a + kf + 1.0) * (b + kf + 1.0) / ((c + kf + 1.0) * (kf + 2.0)) * z).norm();
            let tail = next / (1.0 - q);
            if tail <= tol * sum.norm().max(1.0) {
                return Ok(Evaluation { value: sum, error_estimate: tail, terms_used: k + 2, degree_reached: k + 1 });
            }
        }
    }
    Err(Error::Convergence(format!("2F1 series did not reach tol {tol:e} in {MAX_TERMS} terms at z = {z}")))
}

/// `₂F₁(a, b; c; z)`.
///
/// Direct series when `|z|` is the smaller of `|z|` and `|z/(z−1)|`, otherwise
/// the Pfaff map `(1−z)^{−a} ₂F₁(a, c−b; c; z/(z−1))`. Either way the series
/// argument must stay below [`SERIES_RADIUS`]; the cut `[1, ∞)` is refused.
pub fn hyp2f1(p: &Hyp2F1Params, tol: f64) -> Result<Evaluation> {
    let Hyp2F1Params { a, b, c, z } = *p;
    if is_nonpositive_integer(c) {
        return Err(Error::Parameter(format!("c = {c} is a nonpositive integer")));
    }
    if z.is_zero() {
        return Ok(Evaluation::exact(Complex64::one()));
    }
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(Error::Domain(format!("z = {z} lies on the branch cut [1, inf)")));
    }
    let w = z / (z - 1.0);
    if z.norm() <= w.norm() {
        if z.norm() >= SERIES_RADIUS {
            return Err(Error::Domain(format!("z = {z} outside the supported region")));
        }
        series(a, b, c, z, tol)
    } else {
        if w.norm() >= SERIES_RADIUS {
            return Err(Error::Domain(format!("z = {z} outside the supported region")));
        }
        let prefactor = (1.0 - z).powc(-a);
        let inner = series(a, c - b, c, w, tol / prefactor.norm().max(1e-300))?;
        Ok(Evaluation {
            value: prefactor * inner.value,
            error_estimate: inner.error_estimate * prefactor.norm(),
            ..inner
        })
    }
}

/// `d/dz ₂F₁(a, b; c; z)`, the term-wise differentiated series.
pub fn hyp2f1_derivative(p: &Hyp2F1Params, order: u32, tol: f64) -> Result<Evaluation> {
    let mut scale = Complex64::one();
    let (mut a, mut b, mut c) = (p.a, p.b, p.c);
    for _ in 0..order {
        scale *= a * b / c;
        a += 1.0;
        b += 1.0;
        c += 1.0;
    }
    let inner = hyp2f1(&Hyp2F1Params { a, b, c, z: p.z }, tol / scale.norm().max(1e-300))?;
    Ok(Evaluation { value: scale * inner.value, error_estimate: inner.error_estimate * scale.norm(), ..inner })
}

/// Residual of the quadratic Pfaff identity
/// `₂F₁(a,b;a−b+1;z) = (1+z)^{−a} ₂F₁(a/2,(1+a)/2;a−b+1;4z/(1+z)²)`.
pub fn pfaff_quadratic_check(a: Complex64, b: Complex64, z: Complex64) -> Result<f64> {
    let c = a - b + 1.0;
    let tol = 1e-15;
    let lhs = hyp2f1(&Hyp2F1Params::new(a, b, c, z), tol)?;
    let w = 4.0 * z / ((1.0 + z) * (1.0 + z));
    let rhs = hyp2f1(&Hyp2F1Params::new(a / 2.0, (a + 1.0) / 2.0, c, w), tol)?;
    Ok((lhs.value - (1.0 + z).powc(-a) * rhs.value).norm())
}

/// Exact coefficients `C_{k,0..2k}` of `P_k(z) = Π_{j=1..k} (z + j)²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PkCoefficients {
    pub k: u32,
    pub coeffs: Vec<BigUint>,
}

impl PkCoefficients {
    /// `C_{k,j}`, zero beyond degree `2k`.
    pub fn get(&self, j: usize) -> BigUint {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, c| {
            acc * z + c.to_f64().unwrap_or(f64::INFINITY)
        })
    }
}

pub fn pk_coefficients(k: u32) -> PkCoefficients {
    assert!(k >= 1, "P_k is defined for k >= 1");
    let mut poly = vec![BigUint::one()];
    for j in 1..=k {
        // multiply by (z + j)² = z² + 2j z + j²
        let factor = [BigUint::from(j * j), BigUint::from(2 * j), BigUint::one()];
        let mut next = vec![BigUint::zero(); poly.len() + 2];
        for (i, p) in poly.iter().enumerate() {
            for (m, f) in factor.iter().enumerate() {
                next[i + m] += p * f;
            }
        }
        poly = next;
    }
    PkCoefficients { k, coeffs: poly }
}

/// `K(u, z) = ₂F₁(z+1, z+1; 1; u)`.
#[allow(non_snake_case)]
pub fn kernel_K(u: Complex64, z: Complex64, tol: f64) -> Result<Evaluation> {
    if u.norm() >= 1.0 {
        return Err(Error::Domain(format!("kernel needs |u| < 1, got {}", u.norm())));
    }
    let a = z + 1.0;
    hyp2f1(&Hyp2F1Params::new(a, a, Complex64::one(), u), tol)
}

/// `Σ_{k ≤ terms} P_k(z)/k!² u^k`, summed directly from the product form of `P_k`.
pub fn kernel_pk_partial_sum(u: Complex64, z: Complex64, terms: usize) -> Complex64 {
    let mut sum = Complex64::one();
    let mut weight = Complex64::one(); // P_k(z) u^k / k!²
    for k in 1..=terms {
        let kf = k as f64;
        let zk = z + kf;
        weight *= zk * zk * u / (kf * kf);
        sum += weight;
    }
    sum
}
