//! Identity suites: every structural claim about `G_n` checked either in
//! exact rational arithmetic or numerically against an independent route.
//!
//! Random rational points are `p/q` with `p ∈ [−20, 20]`, `q ∈ [1, 20]`,
//! drawn from a seeded ChaCha stream and rejected when a precondition fails.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closedforms::{
    a_difference_sides, elliptic_reduction, elliptic_reduction_with_branch, f2_f1_reduction_sides,
    f4_via_gauss_resummation, g2, g2_via_appell_f1, g2_via_appell_f2, g3, g3_f4_expansion,
    g3_via_elliptic_branch, g3_via_elliptic_integral, hypergeo_ode_residual, legendre_generating_check,
    log_derivative_identities, psi_at_zero, reduction_limits, riccati_residual, root_discriminant_identity_exact,
    root_discriminant_residual,
};
use crate::error::{Error, Result};
use crate::multiseries::{
    check_pde_coefficients, eval_f4_series, eval_fc_series, eval_gn_series, CPoint, TruncationSpec,
};
use crate::symmetry::{
    hn, modulus_quasi_invariance, qn, rat, u_invariant, verify_q_covariance, verify_quasi_invariance,
    verify_u_invariance, RationalPoint, TransformWord,
};

/// Named identity suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Pde,
    Qcov,
    Uinv,
    Quasi,
    Elliptic,
    Riccati,
    Appell,
    Legendre,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 8] =
        [Suite::Pde, Suite::Qcov, Suite::Uinv, Suite::Quasi, Suite::Elliptic, Suite::Riccati, Suite::Appell, Suite::Legendre];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pde => "pde",
            Suite::Qcov => "qcov",
            Suite::Uinv => "uinv",
            Suite::Quasi => "quasi",
            Suite::Elliptic => "elliptic",
            Suite::Riccati => "riccati",
            Suite::Appell => "appell",
            Suite::Legendre => "legendre",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::INDIVIDUAL
            .iter()
            .chain(std::iter::once(&Suite::All))
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown suite '{s}'")))
    }
}

/// Knobs shared by all suites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Restrict dimension-dependent suites to one `n`.
    pub n: Option<usize>,
    /// Degree bound for the exact coefficient identities.
    pub max_degree: u32,
    /// Random rational points per `(n, j)`.
    pub rational_points: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 7, n: None, max_degree: 12, rational_points: 50 }
    }
}

/// Outcome of one identity over all its sample points.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityResult {
    pub suite: Suite,
    pub identity: String,
    pub checked: usize,
    /// `None` for exact checks.
    pub tolerance: Option<f64>,
    pub worst_residual: f64,
    pub failures: usize,
    pub counterexample: Option<String>,
}

impl IdentityResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for IdentityResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let tol = match self.tolerance {
            None => "exact".to_string(),
            Some(t) => format!("tol {t:.0e}"),
        };
        write!(
            f,
            "{status} [{}] {}: {} checks, {tol}, worst residual {:.3e}",
            self.suite, self.identity, self.checked, self.worst_residual
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, "; first failure: {c}")?;
        }
        Ok(())
    }
}

/// Accumulates residuals for one identity.
struct Tally {
    result: IdentityResult,
}

impl Tally {
    fn exact(suite: Suite, identity: impl Into<String>) -> Self {
        Tally::new(suite, identity, None)
    }

    fn numeric(suite: Suite, identity: impl Into<String>, tol: f64) -> Self {
        Tally::new(suite, identity, Some(tol))
    }

    fn new(suite: Suite, identity: impl Into<String>, tolerance: Option<f64>) -> Self {
        Tally {
            result: IdentityResult {
                suite,
                identity: identity.into(),
                checked: 0,
                tolerance,
                worst_residual: 0.0,
                failures: 0,
                counterexample: None,
            },
        }
    }

    fn fail(&mut self, what: impl FnOnce() -> String) {
        self.result.failures += 1;
        if self.result.counterexample.is_none() {
            self.result.counterexample = Some(what());
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.result.checked += 1;
        if !ok {
            self.result.worst_residual = 1.0;
            self.fail(what);
        }
    }

    fn residual(&mut self, r: f64, what: impl FnOnce() -> String) {
        self.result.checked += 1;
        let tol = self.result.tolerance.unwrap_or(0.0);
        if r.is_nan() || r > self.result.worst_residual {
            self.result.worst_residual = if r.is_nan() { f64::INFINITY } else { r };
        }
        if !(r < tol || (tol == 0.0 && r == 0.0)) {
            self.fail(what);
        }
    }

    fn outcome<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.result.checked += 1;
                self.result.worst_residual = f64::INFINITY;
                let w = what();
                self.fail(|| format!("{w}: {e}"));
                None
            }
        }
    }

    fn finish(self) -> IdentityResult {
        self.result
    }
}

/// All identity results from one run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuiteReport {
    pub results: Vec<IdentityResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(IdentityResult::passed)
    }

    pub fn first_failure(&self) -> Option<&IdentityResult> {
        self.results.iter().find(|r| !r.passed())
    }
}

/// Seeded source of test points.
pub struct PointSampler {
    rng: ChaCha8Rng,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        PointSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// `p/q`, `p ∈ [−20, 20]`, `q ∈ [1, 20]`.
    pub fn rational(&mut self) -> BigRational {
        let p: i64 = self.rng.gen_range(-20..=20);
        let q: i64 = self.rng.gen_range(1..=20);
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    /// A rational point satisfying `accept`, redrawn until it does.
    pub fn rational_point(&mut self, n: usize, accept: impl Fn(&RationalPoint) -> bool) -> RationalPoint {
        loop {
            let p = RationalPoint::new((0..n).map(|_| self.rational()).collect());
            if accept(&p) {
                return p;
            }
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    /// Complex point with every coordinate in the disc `|z| ≤ r`.
    pub fn small_complex(&mut self, n: usize, r: f64) -> CPoint {
        CPoint::new(
            (0..n)
                .map(|_| {
                    let rho = r * self.rng.gen_range(0.05f64..1.0).sqrt();
                    Complex64::from_polar(rho, self.rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
                })
                .collect(),
        )
    }

    /// Point with coordinates uniform in `[−hi, −lo]`.
    pub fn negative_real(&mut self, n: usize, lo: f64, hi: f64) -> CPoint {
        CPoint::real(&(0..n).map(|_| -self.uniform(lo, hi)).collect::<Vec<_>>())
    }
}

fn nonzero_and_q(p: &RationalPoint, pivots: &[usize]) -> bool {
    pivots.iter().all(|&j| !p.0[j - 1].is_zero()) && !qn(p.as_slice()).is_zero()
}

fn show_rational(p: &RationalPoint) -> String {
    let parts: Vec<String> = p.0.iter().map(|r| r.to_string()).collect();
    format!("({})", parts.join(","))
}

fn show_point(p: &CPoint) -> String {
    let parts: Vec<String> = p
        .as_slice()
        .iter()
        .map(|z| if z.im == 0.0 { format!("{}", z.re) } else { format!("{}{:+}i", z.re, z.im) })
        .collect();
    parts.join(",")
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn dims(cfg: &VerifyConfig, all: std::ops::RangeInclusive<usize>) -> Vec<usize> {
    match cfg.n {
        Some(n) if all.contains(&n) => vec![n],
        Some(_) => vec![],
        None => all.collect(),
    }
}

/// Run one suite (or all of them).
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    let results = match suite {
        Suite::All => {
            return SuiteReport {
                results: Suite::INDIVIDUAL.iter().flat_map(|&s| run_suite(s, cfg).results).collect(),
            }
        }
        Suite::Pde => pde_suite(cfg),
        Suite::Qcov => qcov_suite(cfg),
        Suite::Uinv => uinv_suite(cfg),
        Suite::Quasi => quasi_suite(cfg),
        Suite::Elliptic => elliptic_suite(cfg),
        Suite::Riccati => riccati_suite(cfg),
        Suite::Appell => appell_suite(cfg),
        Suite::Legendre => legendre_suite(cfg),
    };
    SuiteReport { results }
}

fn pde_suite(cfg: &VerifyConfig) -> Vec<IdentityResult> {
    dims(cfg, 1..=4)
        .into_iter()
        .map(|n| {
            let check = check_pde_coefficients(n, cfg.max_degree);
            let mut t = Tally::exact(Suite::Pde, format!("coefficient recurrences n={n}, |l|<={}", cfg.max_degree));
            t.result.checked = check.checked;
            if let Some(c) = check.counterexample {
                t.result.worst_residual = 1.0;
                t.fail(|| format!("verify --suite pde --n {n} --max-degree {}: {c}", cfg.max_degree));
            }
            t.finish()
        })
        .collect()
}

fn qcov_suite(cfg: &VerifyConfig) -> Vec<IdentityResult> {
    let mut out = Vec::new();
    for n in dims(cfg, 1..=4) {
        let mut sampler = PointSampler::new(cfg.seed.wrapping_add(n as u64));
        let mut cov = Tally::exact(Suite::Qcov, format!("Q(T_j x) x_j^2 = Q(x), n={n}"));
        let mut perm = Tally::exact(Suite::Qcov, format!("Q(sigma x) = Q(x), n={n}"));
        let mut inv = Tally::exact(Suite::Qcov, format!("T_j T_j x = x, n={n}"));
        for j in 1..=n {
            for _ in 0..cfg.rational_points {
                let x = sampler.rational_point(n, |p| nonzero_and_q(p, &[j]));
                let seed = cfg.seed;
                let ce = || format!("verify --suite qcov --seed {seed} --n {n}: j={j}, x={}", show_rational(&x));
                if let Some(ok) = cov.outcome(verify_q_covariance(j, &x), ce) {
                    cov.check(ok, ce);
                }
                let word = TransformWord::new(vec![
                    crate::symmetry::Letter::Involution(j),
                    crate::symmetry::Letter::Involution(j),
                ]);
                if let Some(y) = inv.outcome(word.apply(x.as_slice()), ce) {
                    inv.check(y == x.0, ce);
                }
                let mut sigma: Vec<usize> = (0..n).collect();
                sigma.rotate_left(j % n.max(1));
                let rotated = TransformWord::new(vec![crate::symmetry::Letter::Permutation(sigma)]);
                if let Some(y) = perm.outcome(rotated.apply(x.as_slice()), ce) {
                    perm.check(qn(&y) == qn(x.as_slice()), ce);
                }
            }
        }
        out.extend([cov.finish(), inv.finish(), perm.finish()]);
    }
    out
}

fn uinv_suite(cfg: &VerifyConfig) -> Vec<IdentityResult> {
    let mut sampler = PointSampler::new(cfg.seed.wrapping_add(100));
    let seed = cfg.seed;
    let mut inv = Tally::exact(Suite::Uinv, "u(T_j x) = u(x)");
    for j in 1..=3 {
        for _ in 0..cfg.rational_points {
            let x = sampler.rational_point(3, |p| {
                nonzero_and_q(p, &[j]) && crate::symmetry::t_involution(j, p.as_slice()).map(|y| !qn(&y).is_zero()).unwrap_or(false)
            });
            let ce = || format!("verify --suite uinv --seed {seed}: j={j}, x={}", show_rational(&x));
            if let Some(ok) = inv.outcome(verify_u_invariance(j, &x), ce) {
                inv.check(ok, ce);
            }
        }
    }
    let mut perm = Tally::exact(Suite::Uinv, "u(sigma x) = u(x), all permutations");
    for _ in 0..cfg.rational_points {
        let x = sampler.rational_point(3, |p| nonzero_and_q(p, &[]));
        let base = u_invariant(x.as_slice()).unwrap();
        for sigma in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let y: Vec<BigRational> = sigma.iter().map(|&s| x.0[s].clone()).collect();
            perm.check(u_invariant(&y).unwrap() == base, || format!("x={}, sigma={sigma:?}", show_rational(&x)));
        }
    }
    let mut ninth = Tally::exact(Suite::Uinv, "u(1/9,1/9,1/9) = 1");
    let p = RationalPoint::from_fracs(&[(1, 9), (1, 9), (1, 9)]);
    ninth.check(u_invariant(p.as_slice()).map(|u| u.is_one()).unwrap_or(false), || "x=(1/9,1/9,1/9)".into());
    let mut boundary = Tally::exact(Suite::Uinv, "u(a^2,b^2,c^2) = 1 for a+b+c = 1");
    for _ in 0..cfg.rational_points {
        let (a, b) = loop {
            let a = sampler.rational().abs() / rat(20, 1);
            let b = sampler.rational().abs() / rat(20, 1);
            if !a.is_zero() && !b.is_zero() && &a + &b < BigRational::one() {
                break (a, b);
            }
        };
        let c = BigRational::one() - &a - &b;
        let x = RationalPoint::new(vec![&a * &a, &b * &b, &c * &c]);
        boundary.check(u_invariant(x.as_slice()).map(|u| u.is_one()).unwrap_or(false), || {
            format!("a={a}, b={b}, c={c}")
        });
    }
    vec![inv.finish(), perm.finish(), ninth.finish(), boundary.finish()]
}

/// Negative-real quasi-invariance samples per `(n, j)`.
pub const QUASI_POINTS: usize = 10;

/// Grid used for the `H_2 ≡ 1` and series/closed-form comparisons at `n = 2`.
pub fn n2_grid() -> Vec<CPoint> {
    let mut pts = Vec::new();
    for i in 0..10 {
        for j in 0..10 {
            let p = CPoint::real(&[0.2 * i as f64 / 9.0, 0.2 * j as f64 / 9.0]);
            if crate::multiseries::in_omega_n(&p) {
                pts.push(p);
            }
        }
    }
    pts
}

fn quasi_suite(cfg: &VerifyConfig) -> Vec<IdentityResult> {
    let tol = 1e-9;
    let seed = cfg.seed;
    let mut out = Vec::new();
    for n in dims(cfg, 2..=3) {
        let mut sampler = PointSampler::new(cfg.seed.wrapping_add(200 + n as u64));
        for j in 1..=n {
            let mut g = Tally::numeric(Suite::Quasi, format!("G(T_j x) = -x_j G(x), n={n}, j={j}"), tol);
            let mut h = Tally::numeric(Suite::Quasi, format!("H(T_j x) = H(x), n={n}, j={j}"), tol);
            let mut m = Tally::numeric(Suite::Quasi, format!("|G(T_j x)| = |x_j| |G(x)|, n={n}, j={j}"), tol);
            for _ in 0..QUASI_POINTS {
                let x = loop {
                    let p = sampler.negative_real(n, 0.01, 0.2);
                    if p.as_slice().iter().map(|z| z.norm().sqrt()).sum::<f64>() <= 0.8 {
                        break p;
                    }
                };
                let ce = || format!("verify --suite quasi --seed {seed} --n {n}: j={j}, x={}", show_point(&x));
                if let Some(r) = g.outcome(verify_quasi_invariance(n, j, &x), ce) {
                    let scale = r.g_at_image.norm().max(1.0);
                    g.residual(r.g_residual / scale, ce);
                    h.residual(r.h_residual, ce);
                }
                if let Some(r) = m.outcome(modulus_quasi_invariance(j, &x), ce) {
                    m.residual(r, ce);
                }
            }
            out.extend([g.finish(), h.finish(), m.finish()]);
        }
    }
    if dims(cfg, 2..=2).contains(&2) {
        let mut one = Tally::numeric(Suite::Quasi, "H_2 = 1 on the n=2 grid", 1e-11);
        for p in n2_grid() {
            if let Some(v) = one.outcome(hn(&p), || show_point(&p)) {
                one.residual((v - 1.0).norm(), || show_point(&p));
            }
        }
        out.push(one.finish());
    }
    out
}

fn elliptic_suite(cfg: &VerifyConfig) -> Vec<IdentityResult> {
    let seed = cfg.seed;
    let mut sampler = PointSampler::new(cfg.seed.wrapping_add(300));
    let mut inv = Tally::numeric(Suite::Elliptic, "quartic factorization, cross-ratio, mu product, root-gap identity", 1e-10);
    let mut value = Tally::numeric(Suite::Elliptic, "elliptic-integral G_3 = closed-form G_3", 1e-9);
    let mut swap = Tally::numeric(Suite::Elliptic, "sqrt(x1 x2) branch swap leaves G_3 unchanged", 1e-9);
    let mut disc = Tally::numeric(Suite::Elliptic, "(a+^2-4x3)(a-^2-4x3) = Q^2 (1-u), numeric", 1e-10);
    for _ in 0..cfg.rational_points {
        let x = sampler.small_complex(3, 0.05);
        let ce = || format!("verify --suite elliptic --seed {seed}: x={}", show_point(&x));
        if let Some(r) = inv.outcome(elliptic_reduction(&x), ce) {
            inv.residual(r.invariant_residuals().max(), ce);
        }
        if let (Some(e), Some(c)) = (
            value.outcome(g3_via_elliptic_integral(&x, 1e-15), ce),
            value.outcome(g3(&x), ce),
        ) {
            value.residual(rel(e.value, c), ce);
        }
        if let (Some(a), Some(b)) = (
            swap.outcome(g3_via_elliptic_branch(&x, false, 1e-15), ce),
            swap.outcome(g3_via_elliptic_branch(&x, true, 1e-15), ce),
        ) {
            swap.residual(rel(b.value, a.value), ce);
        }
        if let Some(r) = disc.outcome(root_discriminant_residual(&x), ce) {
            disc.residual(r, ce);
        }
        if let (Ok(a), Ok(b)) = (elliptic_reduction_with_branch(&x, false), elliptic_reduction_with_branch(&x, true)) {
            swap.residual(rel(b.lambda, a.lambda).max(rel(b.mu, a.mu)), ce);
        }
    }
    let eps = 1e-6;
    let mut lim = Tally::numeric(Suite::Elliptic, "small-x limits at eps=1e-6 (deviation / eps)", 10.0);
    if let Some(d) = lim.outcome(reduction_limits(eps), || format!("eps={eps}")) {
        for (k, v) in d.iter().enumerate() {
            lim.residual(v / eps, || format!("limit {k} at eps={eps}"));
        }
    }
    let mut exact = Tally::exact(Suite::Elliptic, "(a+a-)^2 - 4x3(a+^2+a-^2) + 16x3^2 = Q^2 - 64x1x2x3");
    for _ in 0..20 {
        let x = sampler.rational_point(3, |_| true);
        let ce = || format!("verify --suite elliptic --seed {seed}: x={}", show_rational(&x));
        if let Some(ok) = exact.outcome(root_discriminant_identity_exact(x.as_slice()), ce) {
            exact.check(ok, ce);
        }
    }
    vec![inv.finish(), value.finish(), swap.finish(), disc.finish(), lim.finish(), exact.finish()]
}

/// `t ∈ {0, 0.001, …, 0.007, 1/128}`.
pub fn riccati_nodes() -> Vec<f64> {
    let mut v: Vec<f64> = (0..=7).map(|k| k as f64 * 1e-3).collect();
    v.push(1.0 / 128.0);
    v
}

fn riccati_suite(cfg: &VerifyConfig) -> Vec<IdentityResult> {
    let seed = cfg.seed;
    let mut ric = Tally::numeric(Suite::Riccati, "Riccati residual for psi = phi'/phi", 1e-9);
    let mut lin = Tally::numeric(Suite::Riccati, "linear ODE residual for phi", 1e-9);
    for t in riccati_nodes() {
        let ce = || format!("t={t}");
        if let Some(r) = ric.outcome(riccati_residual(t.into()), ce) {
            ric.residual(r.norm(), ce);
        }
        if let Some(r) = lin.outcome(hypergeo_ode_residual(t.into()), ce) {
            lin.residual(r.norm(), ce);
        }
    }
    let mut psi = Tally::exact(Suite::Riccati, "psi(0) = 12");
    psi.check(psi_at_zero() == rat(12, 1), || format!("psi(0) = {}", psi_at_zero()));

    let mut sampler = PointSampler::new(cfg.seed.wrapping_add(400));
    let mut first = Tally::exact(Suite::Riccati, "D_x Q - D_y Q = 4(x-y)/Q");
    let mut second = Tally::exact(Suite::Riccati, "x (D_x Q)^2 - y (D_y Q)^2 = 4(x-y)/Q + 16(x-y) z/Q^2");
    let mut adiff = Tally::exact(Suite::Riccati, "A_x - A_y = (x-y)/(xy) {(64v-1)v^2, (128v-1)v, 12v}");
    for _ in 0..cfg.rational_points {
        let x = sampler.rational_point(3, |p| nonzero_and_q(p, &[1, 2]));
        let ce = || format!("verify --suite riccati --seed {seed}: x={}", show_rational(&x));
        if let Some([(l1, r1), (l2, r2)]) = first.outcome(log_derivative_identities(x.as_slice()), ce) {
            first.check(l1 == r1, ce);
            second.check(l2 == r2, ce);
        }
        if let Some(sides) = adiff.outcome(a_difference_sides(x.as_slice()), ce) {
            adiff.check(sides.iter().all(|(l, r)| l == r), ce);
        }
    }
    vec![ric.finish(), lin.finish(), psi.finish(), first.finish(), second.finish(), adiff.finish()]
}

/// `[0, 0.05]²` grid used by the Appell identities.
pub fn appell_grid() -> Vec<(f64, f64)> {
    let s = [0.0, 0.0125, 0.025, 0.0375, 0.05];
    s.iter().flat_map(|&a| s.iter().map(move |&b| (a, b))).collect()
}

fn appell_suite(_cfg: &VerifyConfig) -> Vec<IdentityResult> {
    let tol = 1e-8;
    let trunc = TruncationSpec::default();
    let c = |v: f64| Complex64::new(v, 0.0);
    let one = c(1.0);
    let mut resum = Tally::numeric(Suite::Appell, "F4 = sum over 2F1 resummation", tol);
    let mut f2 = Tally::numeric(Suite::Appell, "G_2 via F_2", tol);
    let mut f1 = Tally::numeric(Suite::Appell, "G_2 via F_1", tol);
    let mut red = Tally::numeric(Suite::Appell, "F_2 to F_1 reduction", tol);
    let mut fc = Tally::numeric(Suite::Appell, "F_C(1,1,1;x) = G_n series", 1e-12);
    for (x1, x2) in appell_grid() {
        let ce = || format!("(x1,x2)=({x1},{x2})");
        let (a, b, g, gp) = (c(1.5), c(0.75), c(1.25), c(2.0));
        if let (Some(l), Some(r)) = (
            resum.outcome(eval_f4_series(a, b, g, gp, c(x1), c(x2), &trunc), ce),
            resum.outcome(f4_via_gauss_resummation(a, b, g, gp, c(x1), c(x2), 60), ce),
        ) {
            resum.residual(rel(r, l.value), ce);
        }
        if let Some(exact) = f2.outcome(g2(c(x1), c(x2)), ce) {
            if let Some(v) = f2.outcome(g2_via_appell_f2(c(x1), c(x2), &trunc), ce) {
                f2.residual(rel(v, exact), ce);
            }
            if let Some(v) = f1.outcome(g2_via_appell_f1(c(x1), c(x2), &trunc), ce) {
                f1.residual(rel(v, exact), ce);
            }
        }
        if let Some((l, r)) = red.outcome(f2_f1_reduction_sides(one, one, c(0.5), one, c(x1), c(x2), &trunc), ce) {
            red.residual(rel(r, l), ce);
        }
        let p = CPoint::real(&[x1, x2]);
        if let (Some(l), Some(r)) = (
            fc.outcome(eval_fc_series(one, one, &[one, one], &p, &trunc), ce),
            fc.outcome(eval_gn_series(&p, &trunc), ce),
        ) {
            fc.residual(rel(l.value, r.value), ce);
        }
    }
    let mut exp = Tally::numeric(Suite::Appell, "G_3 = sum_k F4(k+1,k+1,1,1;x1,x2) x3^k, K=20", tol);
    for &(x1, x2) in &appell_grid() {
        for x3 in [0.01, 0.03, 0.05] {
            let x = CPoint::real(&[x1, x2, x3]);
            let ce = || format!("x={}", show_point(&x));
            if let (Some(e), Some(r)) = (exp.outcome(g3_f4_expansion(&x, 20, &trunc), ce), exp.outcome(g3(&x), ce)) {
                exp.residual(rel(e.value, r), ce);
            }
        }
    }
    vec![resum.finish(), f2.finish(), f1.finish(), red.finish(), fc.finish(), exp.finish()]
}

/// Ten admissible real points for the Legendre generating-function check.
pub fn legendre_points() -> Vec<(f64, f64)> {
    vec![
        (0.15, 0.05),
        (0.1, 0.0),
        (0.0, 0.1),
        (0.05, 0.15),
        (0.12, 0.02),
        (0.2, 0.1),
        (0.08, 0.01),
        (0.03, 0.09),
        (-0.05, 0.05),
        (0.1, -0.05),
    ]
}

fn legendre_suite(_cfg: &VerifyConfig) -> Vec<IdentityResult> {
    let mut t = Tally::numeric(Suite::Legendre, "sum P_k(z) r^k = G_2", 1e-9);
    for (x1, x2) in legendre_points() {
        let ce = || format!("(x1,x2)=({x1},{x2})");
        if let Some(r) = t.outcome(legendre_generating_check(x1, x2, 60), ce) {
            t.residual(r, ce);
        }
    }
    vec![t.finish()]
}
