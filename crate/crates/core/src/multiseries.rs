//! Multi-index machinery and direct series evaluation.
//!
//! Every series here has the shape
//!
//! ```text
//!   Σ_ℓ  A_{|ℓ|} · (|ℓ|! / ℓ!)^p · Π_j B_j(ℓ_j) · x^ℓ
//! ```
//!
//! for some total-degree factor `A`, a per-coordinate factor `B_j` and a
//! multinomial power `p ∈ {0, 1, 2}`. `G_n` is the case `A = B = 1, p = 2`;
//! Lauricella `F_C` (and so Appell `F_4`), `F_2` and `F_1` only differ in the
//! tables. Splitting the coefficient this way keeps every factor well scaled,
//! so nothing overflows long before the terms themselves become negligible.
//!
//! Summation goes shell by shell in total degree, lexicographically inside a
//! shell.

use std::fmt;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::contour::GnEvaluator;
use crate::error::{Error, Result};

/// A tuple of nonnegative integers `ℓ = (ℓ_1, …, ℓ_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(indices: Vec<u32>) -> Self {
        assert!(!indices.is_empty(), "a multi-index needs at least one entry");
        MultiIndex(indices)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    /// `|ℓ|`
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&l| u64::from(l)).sum()
    }

    /// `ℓ! = ℓ_1! ⋯ ℓ_n!`
    pub fn factorial(&self) -> BigUint {
        self.0.iter().map(|&l| factorial(u64::from(l))).product()
    }

    /// `ℓ + k·e_j` with a 0-based `j`.
    pub fn shifted(&self, j: usize, k: u32) -> MultiIndex {
        let mut v = self.0.clone();
        v[j] += k;
        MultiIndex(v)
    }
}

impl From<&[u32]> for MultiIndex {
    fn from(v: &[u32]) -> Self {
        MultiIndex::new(v.to_vec())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// A point of `ℂⁿ`. Coordinates are addressed 1-based through [`CPoint::coord`].
#[derive(Debug, Clone, PartialEq)]
pub struct CPoint(Vec<Complex64>);

impl CPoint {
    pub fn new(coords: Vec<Complex64>) -> Self {
        assert!(!coords.is_empty(), "a point needs at least one coordinate");
        CPoint(coords)
    }

    pub fn real(coords: &[f64]) -> Self {
        CPoint::new(coords.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        CPoint::new(vec![Complex64::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// The `j`-th coordinate, `1 ≤ j ≤ n`.
    pub fn coord(&self, j: usize) -> Complex64 {
        assert!(j >= 1 && j <= self.0.len(), "coordinate index {j} out of range");
        self.0[j - 1]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.0
    }

    /// First `n - 1` coordinates (`x'`).
    pub fn head(&self) -> CPoint {
        assert!(self.dim() >= 2, "head of a one-dimensional point is empty");
        CPoint(self.0[..self.0.len() - 1].to_vec())
    }

    /// Last coordinate (`x_n`).
    pub fn last(&self) -> Complex64 {
        *self.0.last().unwrap()
    }

    pub fn scaled(&self, s: Complex64) -> CPoint {
        CPoint(self.0.iter().map(|&c| c * s).collect())
    }

    /// Coordinates reordered so that entry `i` is the old entry `perm[i]` (0-based).
    pub fn permuted(&self, perm: &[usize]) -> CPoint {
        assert_eq!(perm.len(), self.dim());
        CPoint(perm.iter().map(|&p| self.0[p]).collect())
    }
}

/// When to stop summing shells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationSpec {
    pub max_total_degree: usize,
    pub target_tol: f64,
    pub max_terms: usize,
}

impl Default for TruncationSpec {
    fn default() -> Self {
        TruncationSpec { max_total_degree: 600, target_tol: 1e-15, max_terms: 50_000_000 }
    }
}

impl TruncationSpec {
    pub fn with_degree(max_total_degree: usize) -> Self {
        TruncationSpec { max_total_degree, ..Default::default() }
    }
}

/// Value plus bookkeeping; every evaluator in the crate returns one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    /// Heuristic bound on the neglected tail (or the successive quadrature difference).
    pub error_estimate: f64,
    /// Series terms or integrand nodes used.
    pub terms_used: usize,
    /// Last complete shell for series; zero for quadrature.
    pub degree_reached: usize,
}

impl Evaluation {
    pub fn exact(value: Complex64) -> Self {
        Evaluation { value, error_estimate: 0.0, terms_used: 1, degree_reached: 0 }
    }
}

/// `(|ℓ|! / ℓ!)²`, exactly.
pub fn gn_coefficient(l: &MultiIndex) -> BigUint {
    let m = factorial(l.total()) / l.factorial();
    &m * &m
}

/// Σ_j √|x_j| < 1, the convergence domain of `F_C` and `G_n`.
pub fn in_omega_n(x: &CPoint) -> bool {
    x.as_slice().iter().map(|c| c.norm().sqrt()).sum::<f64>() < 1.0
}

/// Visit every composition of `d` into `n` parts in ascending lexicographic order.
pub fn for_each_composition(n: usize, d: u32, mut f: impl FnMut(&[u32])) {
    let mut l = vec![0u32; n];
    l[n - 1] = d;
    loop {
        f(&l);
        // rightmost position i < n-1 whose tail l[i+1..] is nonempty
        let mut tail = 0u32;
        let mut i = n - 1;
        let found = loop {
            tail += l[i];
            if i == 0 {
                break None;
            }
            i -= 1;
            if tail > 0 {
                break Some(i);
            }
        };
        let Some(i) = found else { return };
        l[i] += 1;
        for v in l.iter_mut().take(n - 1).skip(i + 1) {
            *v = 0;
        }
        l[n - 1] = tail - 1;
    }
}

/// Coefficient tables for one shell-summed series.
struct ShellSeries {
    n: usize,
    multinomial_power: u8,
    /// A_{d+1} / A_d
    degree_ratio: Box<dyn Fn(usize) -> Complex64>,
    /// B_j(k+1) / B_j(k)
    coord_ratio: Box<dyn Fn(usize, usize) -> Complex64>,
}

/// Rows of Pascal's triangle in floating point, grown on demand.
struct Pascal(Vec<Vec<f64>>);

impl Pascal {
    fn new() -> Self {
        Pascal(vec![vec![1.0]])
    }

    fn ensure(&mut self, d: usize) {
        while self.0.len() <= d {
            let prev = self.0.last().unwrap();
            let mut row = Vec::with_capacity(prev.len() + 1);
            row.push(1.0);
            for w in prev.windows(2) {
                row.push(w[0] + w[1]);
            }
            row.push(1.0);
            self.0.push(row);
        }
    }

    fn get(&self, s: usize, k: usize) -> f64 {
        self.0[s][k]
    }
}

/// Tail heuristic: geometric continuation of the last shells.
///
/// Shells are grouped in pairs before taking the ratio so that series whose odd
/// (or even) shells cancel exactly still get a sensible estimate.
fn tail_estimate(shell_abs: &[f64]) -> f64 {
    let d = shell_abs.len();
    if d < 4 {
        return f64::INFINITY;
    }
    let block = |k: usize| shell_abs[k] + shell_abs[k - 1];
    let recent = block(d - 1);
    let earlier = block(d - 3);
    if recent == 0.0 {
        return 0.0;
    }
    let rho = if earlier == 0.0 { 0.99 } else { (recent / earlier).sqrt().clamp(0.0, 0.99) };
    recent * rho / (1.0 - rho)
}

fn tol_scale(v: Complex64) -> f64 {
    v.norm().max(1.0)
}

impl ShellSeries {
    fn sum(&self, x: &[Complex64], trunc: &TruncationSpec) -> Result<Evaluation> {
        let n = self.n;
        debug_assert_eq!(x.len(), n);
        let mut pascal = Pascal::new();
        // powers[j][k] = B_j(k) · x_j^k
        let mut powers: Vec<Vec<Complex64>> = vec![vec![Complex64::one()]; n];
        let mut a_d = Complex64::one();
        let mut sum = Complex64::zero();
        let mut shell_abs = Vec::new();
        let mut terms = 0usize;
        let mut err;
        let mut d = 0usize;
        loop {
            if self.multinomial_power > 0 {
                pascal.ensure(d);
            }
            for (j, p) in powers.iter_mut().enumerate() {
                while p.len() <= d {
                    let k = p.len() - 1;
                    let next = p[k] * (self.coord_ratio)(j, k) * x[j];
                    p.push(next);
                }
            }
            let mut shell = Complex64::zero();
            let mut bad = false;
            for_each_composition(n, d as u32, |l| {
                let mut s = 0usize;
                let mut term = a_d;
                for (j, &lj) in l.iter().enumerate() {
                    let lj = lj as usize;
                    s += lj;
                    let mut f = powers[j][lj];
                    match self.multinomial_power {
                        0 => {}
                        1 => f *= pascal.get(s, lj),
                        _ => {
                            let b = pascal.get(s, lj);
                            // b² alone can overflow near the degree cap
                            f = f * b * b;
                        }
                    }
                    term *= f;
                }
                if !term.re.is_finite() || !term.im.is_finite() {
                    bad = true;
                }
                shell += term;
            });
            terms += num_terms(n, d);
            if bad {
                return Err(Error::Convergence(format!("non-finite term in shell {d}")));
            }
            sum += shell;
            shell_abs.push(shell.norm());
            err = tail_estimate(&shell_abs);
            if err <= trunc.target_tol * tol_scale(sum) || d >= trunc.max_total_degree {
                break;
            }
            if terms >= trunc.max_terms {
                return Err(Error::Convergence(format!(
                    "term budget {} exhausted at degree {d}, tail estimate {err:.3e}",
                    trunc.max_terms
                )));
            }
            a_d *= (self.degree_ratio)(d);
            d += 1;
        }
        Ok(Evaluation { value: sum, error_estimate: err, terms_used: terms, degree_reached: d })
    }
}

/// Number of multi-indices of total degree `d` in `n` variables.
fn num_terms(n: usize, d: usize) -> usize {
    // C(d + n - 1, n - 1)
    let mut c: usize = 1;
    for i in 1..n {
        c = c * (d + i) / i;
    }
    c
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

fn check_gamma(gamma: &[Complex64]) -> Result<()> {
    for (j, g) in gamma.iter().enumerate() {
        if is_nonpositive_integer(*g) {
            return Err(Error::Parameter(format!("gamma_{} = {g} is a nonpositive integer", j + 1)));
        }
    }
    Ok(())
}

fn require_omega(x: &CPoint) -> Result<()> {
    if in_omega_n(x) {
        Ok(())
    } else {
        let s: f64 = x.as_slice().iter().map(|c| c.norm().sqrt()).sum();
        Err(Error::Domain(format!("point outside Omega_{}: sum of sqrt|x_j| = {s:.6} >= 1", x.dim())))
    }
}

/// `G_n(x) = Σ (|ℓ|!/ℓ!)² x^ℓ`.
pub fn eval_gn_series(x: &CPoint, trunc: &TruncationSpec) -> Result<Evaluation> {
    require_omega(x)?;
    ShellSeries {
        n: x.dim(),
        multinomial_power: 2,
        degree_ratio: Box::new(|_| Complex64::one()),
        coord_ratio: Box::new(|_, _| Complex64::one()),
    }
    .sum(x.as_slice(), trunc)
}

/// Lauricella `F_C(α, β, γ⃗; x) = Σ (α)_{|ℓ|}(β)_{|ℓ|} / ((γ⃗)_ℓ ℓ!) x^ℓ`.
pub fn eval_fc_series(
    alpha: Complex64,
    beta: Complex64,
    gamma: &[Complex64],
    x: &CPoint,
    trunc: &TruncationSpec,
) -> Result<Evaluation> {
    if gamma.len() != x.dim() {
        return Err(Error::Parameter(format!(
            "{} gamma parameters for a point of dimension {}",
            gamma.len(),
            x.dim()
        )));
    }
    check_gamma(gamma)?;
    require_omega(x)?;
    let gamma = gamma.to_vec();
    // (α)_d(β)_d / d!²  ·  (d!/ℓ!)²  ·  Π ℓ_j! / (γ_j)_{ℓ_j}
    ShellSeries {
        n: x.dim(),
        multinomial_power: 2,
        degree_ratio: Box::new(move |d| {
            let k = (d + 1) as f64;
            (alpha + d as f64) * (beta + d as f64) / (k * k)
        }),
        coord_ratio: Box::new(move |j, k| Complex64::from((k + 1) as f64) / (gamma[j] + k as f64)),
    }
    .sum(x.as_slice(), trunc)
}

/// Appell `F_4(α, β, γ, γ′; x, y)`, the two-variable case of `F_C`.
pub fn eval_f4_series(
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
    gamma_prime: Complex64,
    x: Complex64,
    y: Complex64,
    trunc: &TruncationSpec,
) -> Result<Evaluation> {
    eval_fc_series(alpha, beta, &[gamma, gamma_prime], &CPoint::new(vec![x, y]), trunc)
}

/// Appell `F_2(α, (β, β′), (γ, γ′); x, y)`. Requires `|x| + |y| < 0.8`.
pub fn eval_f2_series(
    alpha: Complex64,
    beta: [Complex64; 2],
    gamma: [Complex64; 2],
    x: Complex64,
    y: Complex64,
    trunc: &TruncationSpec,
) -> Result<Evaluation> {
    check_gamma(&gamma)?;
    if x.norm() + y.norm() >= 0.8 {
        return Err(Error::Domain(format!("F_2 needs |x|+|y| < 0.8, got {:.6}", x.norm() + y.norm())));
    }
    // (α)_d/d! · (d choose ℓ) · Π (β_j)_{ℓ_j}/(γ_j)_{ℓ_j}
    ShellSeries {
        n: 2,
        multinomial_power: 1,
        degree_ratio: Box::new(move |d| (alpha + d as f64) / ((d + 1) as f64)),
        coord_ratio: Box::new(move |j, k| (beta[j] + k as f64) / (gamma[j] + k as f64)),
    }
    .sum(&[x, y], trunc)
}

/// Appell `F_1(α, (β, β′), γ; x, y)`. Requires `max(|x|, |y|) < 0.9`.
pub fn eval_f1_series(
    alpha: Complex64,
    beta: [Complex64; 2],
    gamma: Complex64,
    x: Complex64,
    y: Complex64,
    trunc: &TruncationSpec,
) -> Result<Evaluation> {
    check_gamma(&[gamma])?;
    if x.norm().max(y.norm()) >= 0.9 {
        return Err(Error::Domain(format!("F_1 needs max(|x|,|y|) < 0.9, got {:.6}", x.norm().max(y.norm()))));
    }
    // (α)_d/(γ)_d · Π (β_j)_{ℓ_j}/ℓ_j!
    ShellSeries {
        n: 2,
        multinomial_power: 0,
        degree_ratio: Box::new(move |d| (alpha + d as f64) / (gamma + d as f64)),
        coord_ratio: Box::new(move |j, k| (beta[j] + k as f64) / ((k + 1) as f64)),
    }
    .sum(&[x, y], trunc)
}

/// Outcome of [`check_pde_coefficients`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdeCheck {
    pub n: usize,
    pub max_degree: u32,
    /// Number of individual coefficient equalities tested.
    pub checked: usize,
    pub counterexample: Option<String>,
}

impl PdeCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Coefficients of `((1/x_j) δ_j²)^k G_n` obtained by applying the operator
/// `k` times at the coefficient level: one application maps `c_ℓ` to
/// `(ℓ_j + 1)² c_{ℓ+e_j}`.
fn iterated_operator_coefficient(l: &MultiIndex, j: usize, k: u32) -> BigUint {
    if k == 0 {
        return gn_coefficient(l);
    }
    let lj = BigUint::from(l.indices()[j] + 1);
    &lj * &lj * iterated_operator_coefficient(&l.shifted(j, 1), j, k - 1)
}

/// Exact check of the coefficient identities behind the `G_n` PDE:
///
/// * `ℓ_n² a_ℓ = |ℓ|² a_{ℓ−e_n}` (the PDE `δ_n² G = x_n (D+1)² G`);
/// * `((1/x_j)δ_j²)^k G_n` has coefficients `((|ℓ|+k)!/ℓ!)² = Π_{m≤k}(|ℓ|+m)² a_ℓ`, `k ≤ 3`;
/// * `(ℓ_i+1)² a_{ℓ+e_i} = (ℓ_j+1)² a_{ℓ+e_j}` for every pair `i < j`.
pub fn check_pde_coefficients(n: usize, max_degree: u32) -> PdeCheck {
    assert!(n >= 1 && max_degree >= 1);
    let mut checked = 0usize;
    let mut counterexample = None;
    'outer: for d in 0..=max_degree {
        let mut failure: Option<String> = None;
        for_each_composition(n, d, |raw| {
            if failure.is_some() {
                return;
            }
            let l = MultiIndex::new(raw.to_vec());
            let a = gn_coefficient(&l);
            let total = BigUint::from(l.total());

            if raw[n - 1] >= 1 {
                let mut prev = raw.to_vec();
                prev[n - 1] -= 1;
                let lhs = BigUint::from(raw[n - 1]).pow(2) * &a;
                let rhs = &total * &total * gn_coefficient(&MultiIndex::new(prev));
                checked += 1;
                if lhs != rhs {
                    failure = Some(format!("PDE recurrence fails at l = {l}: {lhs} != {rhs}"));
                    return;
                }
            }

            for j in 0..n {
                for k in 1..=3u32 {
                    let applied = iterated_operator_coefficient(&l, j, k);
                    let m = factorial(l.total() + u64::from(k)) / l.factorial();
                    let closed = &m * &m;
                    let euler: BigUint = (1..=u64::from(k))
                        .map(|m| BigUint::from(l.total() + m).pow(2))
                        .product::<BigUint>()
                        * &a;
                    checked += 2;
                    if applied != closed || closed != euler {
                        failure = Some(format!(
                            "delta-power identity fails at l = {l}, j = {}, k = {k}",
                            j + 1
                        ));
                        return;
                    }
                }
            }

            for i in 0..n {
                for j in (i + 1)..n {
                    let li = BigUint::from(raw[i] + 1);
                    let lj = BigUint::from(raw[j] + 1);
                    let lhs = &li * &li * gn_coefficient(&l.shifted(i, 1));
                    let rhs = &lj * &lj * gn_coefficient(&l.shifted(j, 1));
                    checked += 1;
                    if lhs != rhs {
                        failure = Some(format!(
                            "Cauchy-problem identity fails at l = {l} for pair ({}, {})",
                            i + 1,
                            j + 1
                        ));
                        return;
                    }
                }
            }
        });
        if failure.is_some() {
            counterexample = failure;
            break 'outer;
        }
    }
    PdeCheck { n, max_degree, checked, counterexample }
}

/// `G_n` by direct summation, usable as a base for the contour recursion.
#[derive(Debug, Clone, Copy)]
pub struct SeriesEvaluator {
    pub n: usize,
    pub trunc: TruncationSpec,
}

impl SeriesEvaluator {
    pub fn new(n: usize) -> Self {
        SeriesEvaluator { n, trunc: TruncationSpec::default() }
    }
}

impl GnEvaluator for SeriesEvaluator {
    fn dim(&self) -> usize {
        self.n
    }

    fn in_domain(&self, x: &CPoint) -> bool {
        in_omega_n(x)
    }

    fn eval(&self, x: &CPoint) -> Result<Complex64> {
        eval_gn_series(x, &self.trunc).map(|e| e.value)
    }
}
