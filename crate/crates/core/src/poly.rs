//! The family `P = (x+1)^n - lambda x^p`: roots, critical values, the
//! small-`lambda` root configuration, and modulus structure on the real axis.
//!
//! Roots carry labels `j = 0..n-1` fixed at small positive `lambda = eps^n`
//! by the first-order expansion `x_j ~ eps * exp(2 pi i (j + s)/n) - 1` with
//! `s = 0` for even `p` and `s = 1/2` for odd `p`, and transported elsewhere
//! by continuation. Negative labels are read modulo `n`.

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};

use crate::continuation::{self, match_nearest, min_separation, newton_polish, TrackOptions};
use crate::error::{invalid, Error, Result};

pub const DEFAULT_ROOT_TOL: f64 = 1e-10;
/// Relative threshold for calling two moduli equal.
pub const MODULUS_EQ_TOL: f64 = 1e-8;
pub const CLUSTER_WARNING: f64 = 1e-6;
pub const MAX_DEGREE: u32 = 64;
/// `eps` of the base configuration that defines the root labels.
pub const LABEL_EPS: f64 = 1e-2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolyInstance {
    pub n: u32,
    pub p: u32,
    pub lambda: Complex64,
}

impl PolyInstance {
    pub fn new(n: u32, p: u32, lambda: Complex64) -> Result<Self> {
        if p == 0 || p >= n {
            return invalid(format!("need 0 < p < n, got n={n}, p={p}"));
        }
        Ok(PolyInstance { n, p, lambda })
    }

    pub fn real(n: u32, p: u32, lambda: f64) -> Result<Self> {
        Self::new(n, p, Complex64::new(lambda, 0.0))
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        (x + 1.0).powu(self.n) - self.lambda * x.powu(self.p)
    }

    pub fn derivative(&self, x: Complex64) -> Complex64 {
        (x + 1.0).powu(self.n - 1) * self.n as f64
            - self.lambda * self.p as f64 * x.powu(self.p - 1)
    }

    /// Magnitude of the two terms, the natural scale for residuals.
    pub fn scale(&self, x: Complex64) -> f64 {
        (x + 1.0).norm().powi(self.n as i32) + self.lambda.norm() * x.norm().powi(self.p as i32)
    }

    pub fn relative_residual(&self, x: Complex64) -> f64 {
        let s = self.scale(x);
        if s == 0.0 {
            0.0
        } else {
            self.eval(x).norm() / s
        }
    }

    pub fn q(&self) -> u32 {
        self.n - self.p
    }

    /// `x(x+1) / (lambda((n-p)x - p))`, `None` when the denominator vanishes.
    pub(crate) fn dx_dlambda_raw(&self, x: Complex64) -> Option<Complex64> {
        let denom = self.lambda * (x * self.q() as f64 - self.p as f64);
        if denom.norm() <= f64::MIN_POSITIVE {
            return None;
        }
        Some(x * (x + 1.0) / denom)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// `|P(x)| / (|x+1|^n + |lambda||x|^p)` per root.
    pub residuals: Vec<f64>,
    pub min_separation: f64,
    /// Some pair of roots is closer than `CLUSTER_WARNING`.
    pub clustered: bool,
}

impl RootSet {
    fn from_roots(inst: &PolyInstance, roots: Vec<Complex64>) -> Self {
        let residuals = roots.iter().map(|&x| inst.relative_residual(x)).collect();
        let min_separation = min_separation(&roots);
        RootSet {
            roots,
            residuals,
            min_separation,
            clustered: min_separation < CLUSTER_WARNING,
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Every root has a root within `tol` (relative) of its conjugate.
    pub fn conjugation_closed(&self, tol: f64) -> bool {
        self.roots.iter().all(|z| {
            self.roots
                .iter()
                .any(|w| (z.conj() - w).norm() <= tol * (1.0 + z.norm()))
        })
    }
}

/// All `n` roots by Aberth-Ehrlich simultaneous iteration on the unexpanded
/// form of `P`, followed by Newton polishing and a residual check.
pub fn roots(inst: &PolyInstance, tol: f64) -> Result<RootSet> {
    if inst.lambda == Complex64::zero() {
        return invalid("roots need lambda != 0");
    }
    if inst.n > MAX_DEGREE {
        return Err(Error::SizeCap {
            what: "polynomial degree",
            limit: MAX_DEGREE as usize,
            got: inst.n as usize,
        });
    }
    let n = inst.n as usize;
    // Start on a circle about -1 whose radius balances the two terms.
    let rho = inst.lambda.norm().powf(1.0 / n as f64).max(0.5);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(rho, theta) - 1.0
        })
        .collect();

    const MAX_ITER: usize = 2000;
    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut biggest = 0.0f64;
        for k in 0..n {
            let f = inst.eval(z[k]);
            let df = inst.derivative(z[k]);
            if f == Complex64::zero() {
                continue;
            }
            let ratio = f / df;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if w.re.is_finite() && w.im.is_finite() {
                z[k] -= w;
                biggest = biggest.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if biggest <= 1e-15 {
            converged = true;
            break;
        }
    }
    for x in z.iter_mut() {
        if let Some(y) = newton_polish(inst, *x, 3) {
            // Keep the polished value only if it stayed on the same root.
            if (y - *x).norm() < 1e-6 * (1.0 + x.norm()) {
                *x = y;
            }
        }
    }
    let set = RootSet::from_roots(inst, z);
    if !converged && set.max_residual() > tol {
        return Err(Error::NonConvergence {
            what: "Aberth iteration",
            iterations: MAX_ITER,
        });
    }
    if set.max_residual() > tol {
        return Err(Error::Diagnostic(format!(
            "root residual {:e} exceeds {tol:e}",
            set.max_residual()
        )));
    }
    Ok(set)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalData {
    /// `n^n / (p^p (n-p)^(n-p))`.
    pub lambda_crit: f64,
    pub lambda_crit_exact: BigRational,
    /// `p / (n-p)`.
    pub double_root: f64,
    pub double_root_exact: Ratio<u64>,
    /// `|P|` and `|P'|` at the double root and `lambda_crit`, relative to scale.
    pub value_residual: f64,
    pub derivative_residual: f64,
}

impl CriticalData {
    /// At `lambda = 0` all roots sit at `-1`.
    pub const ZERO_LAMBDA_ROOT: f64 = -1.0;
}

pub fn critical_data(n: u32, p: u32) -> Result<CriticalData> {
    PolyInstance::new(n, p, Complex64::zero())?;
    let q = n - p;
    let pow = |b: u32, e: u32| BigInt::from(BigUint::from(b).pow(e));
    let lambda_crit_exact = BigRational::new(pow(n, n), pow(p, p) * pow(q, q));
    let lambda_crit = lambda_crit_exact
        .to_f64()
        .unwrap_or_else(|| crate::transfer::spectral_ceiling(p as u64, n as u64));
    let double_root_exact = Ratio::new(p as u64, q as u64);
    let double_root = p as f64 / q as f64;

    let inst = PolyInstance::real(n, p, lambda_crit)?;
    let x = Complex64::new(double_root, 0.0);
    let value_residual = inst.relative_residual(x);
    let dscale = n as f64 * (x + 1.0).norm().powi(n as i32 - 1)
        + lambda_crit * p as f64 * x.norm().powi(p as i32 - 1);
    let derivative_residual = inst.derivative(x).norm() / dscale;
    Ok(CriticalData {
        lambda_crit,
        lambda_crit_exact,
        double_root,
        double_root_exact,
        value_residual,
        derivative_residual,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DoubleRoot {
    pub lambda: f64,
    pub x: f64,
}

/// Locates the positive real double root without the closed form: scans
/// `lambda` upward until two positive real roots appear, then solves
/// `P = P' = 0` for `(x, lambda)` by Newton's method.
pub fn detect_double_root(n: u32, p: u32) -> Result<DoubleRoot> {
    PolyInstance::new(n, p, Complex64::zero())?;
    let mut lambda = 1e-3;
    let mut start = None;
    while lambda < 1e40 {
        let inst = PolyInstance::real(n, p, lambda)?;
        let set = roots(&inst, 1e-8)?;
        let positive: Vec<f64> = set
            .roots
            .iter()
            .filter(|z| z.re > 0.0 && z.im.abs() <= 1e-7 * z.norm())
            .map(|z| z.re)
            .collect();
        if positive.len() >= 2 {
            start = Some((positive.iter().sum::<f64>() / positive.len() as f64, lambda));
            break;
        }
        lambda *= 1.05;
    }
    let (mut x, mut lam) = start.ok_or_else(|| Error::Diagnostic("no positive double root found".into()))?;
    let (nf, pf) = (n as f64, p as f64);
    for _ in 0..100 {
        let f = (x + 1.0).powi(n as i32) - lam * x.powi(p as i32);
        let g = nf * (x + 1.0).powi(n as i32 - 1) - lam * pf * x.powi(p as i32 - 1);
        let f_x = g;
        let f_l = -x.powi(p as i32);
        let g_x = nf * (nf - 1.0) * (x + 1.0).powi(n as i32 - 2)
            - lam * pf * (pf - 1.0) * x.powi(p as i32 - 2);
        let g_l = -pf * x.powi(p as i32 - 1);
        let det = f_x * g_l - f_l * g_x;
        if det == 0.0 {
            break;
        }
        let dx = (f * g_l - f_l * g) / det;
        let dl = (f_x * g - f * g_x) / det;
        x -= dx;
        lam -= dl;
        if dx.abs() <= 1e-16 * (1.0 + x.abs()) && dl.abs() <= 1e-16 * lam.abs() {
            break;
        }
    }
    Ok(DoubleRoot { lambda: lam, x })
}

/// First-order small-`lambda` roots `eps * exp(2 pi i (j + s)/n) - 1`,
/// indexed by label `j`.
pub fn small_lambda_approx(n: u32, p: u32, eps: f64) -> Vec<Complex64> {
    let shift = if p % 2 == 1 { 0.5 } else { 0.0 };
    (0..n)
        .map(|j| Complex64::from_polar(eps, 2.0 * PI * (j as f64 + shift) / n as f64) - 1.0)
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmallLambdaReport {
    pub eps: f64,
    /// `eps^n`.
    pub lambda: f64,
    /// The `n` n-th roots of `(-1)^p lambda`, by label.
    pub gammas: Vec<Complex64>,
    /// `gamma_j - 1`, by label.
    pub approx: Vec<Complex64>,
    /// True roots matched to the labels.
    pub exact: Vec<Complex64>,
    pub max_error: f64,
}

pub fn small_lambda_roots(n: u32, p: u32, eps: f64) -> Result<SmallLambdaReport> {
    if !(eps > 0.0 && eps < 1.0) {
        return invalid(format!("eps must lie in (0, 1), got {eps}"));
    }
    let lambda = eps.powi(n as i32);
    let inst = PolyInstance::real(n, p, lambda)?;
    let approx = small_lambda_approx(n, p, eps);
    let gammas = approx.iter().map(|x| x + 1.0).collect();
    let set = roots(&inst, DEFAULT_ROOT_TOL)?;
    let matching = match_nearest(&approx, &set.roots)
        .ok_or_else(|| Error::Diagnostic(format!("eps = {eps} too large: labels do not match roots")))?;
    let exact: Vec<Complex64> = matching.iter().map(|&j| set.roots[j]).collect();
    let max_error = approx
        .iter()
        .zip(&exact)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let spacing = 2.0 * eps * (PI / n as f64).sin();
    if max_error >= spacing / 2.0 {
        return Err(Error::Diagnostic(format!(
            "eps = {eps} too large: first-order error {max_error:e} vs spacing {spacing:e}"
        )));
    }
    Ok(SmallLambdaReport {
        eps,
        lambda,
        gammas,
        approx,
        exact,
        max_error,
    })
}

/// Labeled roots at `LABEL_EPS^n`, polished.
pub fn base_configuration(n: u32, p: u32) -> Result<(f64, Vec<Complex64>)> {
    let rep = small_lambda_roots(n, p, LABEL_EPS)?;
    Ok((rep.lambda, rep.exact))
}

/// Labeled roots at each point of an increasing grid inside `(0, lambda_c)`,
/// continued along the real axis from the base configuration.
pub fn labeled_roots_on_grid(n: u32, p: u32, grid: &[f64]) -> Result<Vec<Vec<Complex64>>> {
    let crit = critical_data(n, p)?;
    if grid.iter().any(|&l| !(l > 0.0 && l < crit.lambda_crit)) {
        return invalid(format!("grid points must lie in (0, {})", crit.lambda_crit));
    }
    let (mut lambda, mut xs) = base_configuration(n, p)?;
    let mut out = Vec::with_capacity(grid.len());
    for &target in grid {
        let (a, b) = (lambda.ln(), target.ln());
        let tracked = continuation::track(
            n,
            p,
            |t| Complex64::new((a + t * (b - a)).exp(), 0.0),
            &xs,
            TrackOptions::default(),
        )?;
        xs = tracked.roots;
        lambda = target;
        out.push(xs.clone());
    }
    Ok(out)
}

pub fn labeled_roots(n: u32, p: u32, lambda: f64) -> Result<Vec<Complex64>> {
    Ok(labeled_roots_on_grid(n, p, &[lambda])?.remove(0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairingReport {
    pub passed: bool,
    /// Equal-modulus pairs that are not conjugate.
    pub violations: Vec<(usize, usize)>,
    /// Conjugate pairs closer than `CLUSTER_WARNING`: near a collision, so the
    /// modulus test says little there.
    pub ambiguous: Vec<(usize, usize)>,
    pub conjugation_closed: bool,
}

/// Equal moduli among the roots at real `lambda` occur only on conjugate pairs.
pub fn modulus_pairing_check(inst: &PolyInstance) -> Result<PairingReport> {
    if inst.lambda.im != 0.0 || inst.lambda.re == 0.0 {
        return invalid("pairing check needs real nonzero lambda");
    }
    let crit = critical_data(inst.n, inst.p)?;
    if ((inst.lambda.re - crit.lambda_crit) / crit.lambda_crit).abs() < 1e-9 {
        return invalid("pairing check needs lambda away from the critical value");
    }
    let set = roots(inst, DEFAULT_ROOT_TOL)?;
    let xs = &set.roots;
    let mut violations = Vec::new();
    let mut ambiguous = Vec::new();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let (a, b) = (xs[i].norm(), xs[j].norm());
            if (a - b).abs() > MODULUS_EQ_TOL * a.max(b).max(1e-300) {
                continue;
            }
            let conj_gap = (xs[i] - xs[j].conj()).norm();
            if conj_gap > 1e-6 * (1.0 + a) {
                violations.push((i, j));
            } else if (xs[i] - xs[j]).norm() < CLUSTER_WARNING {
                ambiguous.push((i, j));
            }
        }
    }
    Ok(PairingReport {
        passed: violations.is_empty(),
        violations,
        ambiguous,
        conjugation_closed: set.conjugation_closed(1e-8),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityCase {
    EvenPOddN,
    OddPOddN,
    OddPEvenN,
}

impl ParityCase {
    pub fn of(n: u32, p: u32) -> Result<Self> {
        match (p % 2, n % 2) {
            (0, 1) => Ok(ParityCase::EvenPOddN),
            (1, 1) => Ok(ParityCase::OddPOddN),
            (1, 0) => Ok(ParityCase::OddPEvenN),
            _ => invalid(format!(
                "no ordering pattern for even p and even n (n={n}, p={p})"
            )),
        }
    }

    /// Groups of equal-modulus labels from the largest modulus down.
    pub fn expected_groups(&self, n: u32) -> Vec<Vec<usize>> {
        let n_i = n as i64;
        let lab = |j: i64| j.rem_euclid(n_i) as usize;
        let sorted = |mut v: Vec<usize>| {
            v.sort_unstable();
            v
        };
        match self {
            ParityCase::EvenPOddN => {
                let m = (n_i - 1) / 2;
                let mut g: Vec<Vec<usize>> = (1..=m).rev().map(|j| sorted(vec![lab(j), lab(-j)])).collect();
                g.push(vec![0]);
                g
            }
            ParityCase::OddPOddN => {
                let m = (n_i - 1) / 2;
                let mut g = vec![vec![lab(m)]];
                g.extend((0..m).rev().map(|j| sorted(vec![lab(j), lab(-j - 1)])));
                g
            }
            ParityCase::OddPEvenN => (0..n_i / 2)
                .rev()
                .map(|j| sorted(vec![lab(j), lab(-j - 1)]))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderingReport {
    pub lambda: f64,
    pub case: ParityCase,
    pub expected_groups: Vec<Vec<usize>>,
    /// `|x_j|` by label.
    pub moduli: Vec<f64>,
    pub matched: bool,
    pub failure: Option<String>,
}

fn check_ordering(lambda: f64, case: ParityCase, xs: &[Complex64]) -> OrderingReport {
    let n = xs.len() as u32;
    let groups = case.expected_groups(n);
    let moduli: Vec<f64> = xs.iter().map(|z| z.norm()).collect();
    let mut failure = None;
    for g in &groups {
        let (lo, hi) = g
            .iter()
            .map(|&j| moduli[j])
            .fold((f64::INFINITY, 0.0f64), |(a, b), m| (a.min(m), b.max(m)));
        if hi - lo > MODULUS_EQ_TOL * hi {
            failure = Some(format!("labels {g:?} differ in modulus ({lo} vs {hi})"));
            break;
        }
    }
    if failure.is_none() {
        for w in groups.windows(2) {
            let upper = moduli[w[0][0]];
            let lower = moduli[w[1][0]];
            if !(upper - lower > MODULUS_EQ_TOL * upper) {
                failure = Some(format!(
                    "group {:?} (|x| = {upper}) does not strictly exceed {:?} (|x| = {lower})",
                    w[0], w[1]
                ));
                break;
            }
        }
    }
    OrderingReport {
        lambda,
        case,
        expected_groups: groups,
        moduli,
        matched: failure.is_none(),
        failure,
    }
}

/// Checks the modulus ordering of the labeled roots at real `lambda` in
/// `(0, lambda_c)` against the parity-case pattern.
pub fn modulus_ordering(n: u32, p: u32, lambda: f64) -> Result<OrderingReport> {
    let case = ParityCase::of(n, p)?;
    let xs = labeled_roots(n, p, lambda)?;
    Ok(check_ordering(lambda, case, &xs))
}

/// [`modulus_ordering`] at every point of an increasing grid, continuing the
/// labels from one point to the next.
pub fn modulus_ordering_on_grid(n: u32, p: u32, grid: &[f64]) -> Result<Vec<OrderingReport>> {
    let case = ParityCase::of(n, p)?;
    let all = labeled_roots_on_grid(n, p, grid)?;
    Ok(grid
        .iter()
        .zip(all)
        .map(|(&l, xs)| check_ordering(l, case, &xs))
        .collect())
}

/// `dx/dlambda = x(x+1) / (lambda((n-p)x - p))` at a root `x`.
pub fn dx_dlambda(x: Complex64, inst: &PolyInstance) -> Result<Complex64> {
    if inst.relative_residual(x) > 1e-8 {
        return Err(Error::Contract(format!("{x} is not a root of P")));
    }
    let guard = (x * inst.q() as f64 - inst.p as f64).norm();
    if guard < 1e-9 * (1.0 + inst.p as f64) {
        return Err(Error::IllConditioned(format!(
            "x = {x} is at the double root p/(n-p); dx/dlambda blows up"
        )));
    }
    inst.dx_dlambda_raw(x)
        .ok_or_else(|| Error::IllConditioned("lambda = 0".into()))
}

/// Central-difference estimate of `dx/dlambda` for every root, matching the
/// roots at `lambda +- h` to those at `lambda` by proximity.
pub fn dx_dlambda_fd(inst: &PolyInstance, h: f64) -> Result<Vec<(Complex64, Complex64)>> {
    let base = roots(inst, DEFAULT_ROOT_TOL)?;
    let shifted = |d: f64| -> Result<Vec<Complex64>> {
        let other = PolyInstance::new(inst.n, inst.p, inst.lambda + d)?;
        let set = roots(&other, DEFAULT_ROOT_TOL)?;
        let m = match_nearest(&base.roots, &set.roots)
            .ok_or_else(|| Error::IllConditioned("roots could not be matched".into()))?;
        Ok(m.into_iter().map(|j| set.roots[j]).collect())
    };
    let plus = shifted(h)?;
    let minus = shifted(-h)?;
    Ok(base
        .roots
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, (plus[i] - minus[i]) / (2.0 * h)))
        .collect())
}

/// `Im((dx/dlambda) / x)` for each nonreal root at real `lambda`: the rate of
/// change of `arg x`.
pub fn arg_rates(inst: &PolyInstance) -> Result<Vec<(Complex64, f64)>> {
    let set = roots(inst, DEFAULT_ROOT_TOL)?;
    set.roots
        .iter()
        .filter(|z| z.im.abs() > 1e-9 * (1.0 + z.norm()))
        .map(|&x| Ok((x, (dx_dlambda(x, inst)? / x).im)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn quadratic_roots() {
        let set = roots(&PolyInstance::real(2, 1, 1.0).unwrap(), DEFAULT_ROOT_TOL).unwrap();
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        assert!(set.roots.iter().any(|&z| close(z, w, 1e-12)));
        assert!(set.roots.iter().any(|&z| close(z, w.conj(), 1e-12)));
        assert!(set.conjugation_closed(1e-10));
    }

    #[test]
    fn double_root_at_critical() {
        let set = roots(&PolyInstance::real(2, 1, 4.0).unwrap(), DEFAULT_ROOT_TOL).unwrap();
        for z in &set.roots {
            assert!(close(*z, Complex64::new(1.0, 0.0), 1e-6), "{z}");
        }
        assert!(set.clustered);
    }

    #[test]
    fn roots_for_assorted_parameters() {
        for &(n, p) in &[(5, 2), (7, 3), (12, 5), (30, 7), (64, 31)] {
            for &lam in &[1e-6, 0.3, 2.0, 1e3, 1e9] {
                let inst = PolyInstance::real(n, p, lam).unwrap();
                let set = roots(&inst, DEFAULT_ROOT_TOL).unwrap();
                assert_eq!(set.roots.len(), n as usize);
                assert!(set.conjugation_closed(1e-7), "n={n} p={p} lambda={lam}");
            }
            let inst = PolyInstance::new(n, p, Complex64::new(0.7, -2.0)).unwrap();
            roots(&inst, DEFAULT_ROOT_TOL).unwrap();
        }
        assert!(roots(&PolyInstance::real(65, 1, 1.0).unwrap(), 1e-10).is_err());
        assert!(roots(&PolyInstance::real(3, 1, 0.0).unwrap(), 1e-10).is_err());
        assert!(PolyInstance::real(3, 3, 1.0).is_err());
    }

    #[test]
    fn critical_examples() {
        let c = critical_data(2, 1).unwrap();
        assert_eq!(c.lambda_crit, 4.0);
        assert_eq!(c.double_root, 1.0);
        let c = critical_data(3, 1).unwrap();
        assert!((c.lambda_crit - 6.75).abs() < 1e-15);
        assert_eq!(c.double_root_exact, Ratio::new(1, 2));
        assert!(c.value_residual < 1e-14 && c.derivative_residual < 1e-14);
        let zero = PolyInstance::real(4, 1, 0.0).unwrap();
        assert_eq!(zero.eval(Complex64::new(CriticalData::ZERO_LAMBDA_ROOT, 0.0)), Complex64::zero());
    }

    #[test]
    fn detected_double_root_matches_formula() {
        let d = detect_double_root(3, 1).unwrap();
        assert!((d.lambda - 6.75).abs() < 1e-9 * 6.75);
        assert!((d.x - 0.5).abs() < 1e-9);
    }

    #[test]
    fn small_lambda_examples() {
        let rep = small_lambda_roots(4, 1, 1e-3).unwrap();
        assert!(rep.max_error <= 1e-5, "{}", rep.max_error);
        for g in &rep.gammas {
            let lhs = g.powu(4);
            assert!(close(lhs, Complex64::new(-rep.lambda, 0.0), 1e-20));
        }
        let tiny = small_lambda_approx(4, 2, 1e-9);
        assert!(tiny.iter().all(|z| close(*z, Complex64::new(-1.0, 0.0), 2e-9)));
        // Odd p rotates the configuration by pi/n.
        let even = small_lambda_approx(5, 2, 0.1);
        let odd = small_lambda_approx(5, 1, 0.1);
        let turn = Complex64::from_polar(1.0, PI / 5.0);
        for (e, o) in even.iter().zip(&odd) {
            assert!(close((e + 1.0) * turn, o + 1.0, 1e-15));
        }
        assert!(small_lambda_roots(4, 1, 0.9).is_err() || small_lambda_roots(4, 1, 0.9).is_ok());
    }

    #[test]
    fn first_order_error_is_quadratic() {
        let a = small_lambda_roots(5, 2, 2e-3).unwrap().max_error;
        let b = small_lambda_roots(5, 2, 1e-3).unwrap().max_error;
        assert!(a / b >= 3.5, "ratio {}", a / b);
    }

    #[test]
    fn pairing_examples() {
        let rep = modulus_pairing_check(&PolyInstance::real(5, 2, 1.0).unwrap()).unwrap();
        assert!(rep.passed && rep.conjugation_closed);
        assert!(modulus_pairing_check(&PolyInstance::real(2, 1, 4.0).unwrap()).is_err());
        let c = critical_data(5, 2).unwrap().lambda_crit;
        let near = modulus_pairing_check(&PolyInstance::real(5, 2, c * (1.0 - 1e-6)).unwrap()).unwrap();
        assert!(near.passed);
    }

    #[test]
    fn ordering_examples() {
        let rep = modulus_ordering(5, 2, 0.5).unwrap();
        assert_eq!(rep.case, ParityCase::EvenPOddN);
        assert!(rep.matched, "{:?}", rep.failure);
        let c = critical_data(6, 3).unwrap();
        assert!(ParityCase::of(6, 3).is_ok());
        let rep = modulus_ordering(6, 3, c.lambda_crit / 3.0).unwrap();
        assert_eq!(rep.case, ParityCase::OddPEvenN);
        assert!(rep.matched, "{:?}", rep.failure);
        assert!(ParityCase::of(6, 2).is_err());
    }

    #[test]
    fn expected_groups_shapes() {
        assert_eq!(
            ParityCase::EvenPOddN.expected_groups(5),
            vec![vec![2, 3], vec![1, 4], vec![0]]
        );
        assert_eq!(
            ParityCase::OddPOddN.expected_groups(5),
            vec![vec![2], vec![1, 3], vec![0, 4]]
        );
        assert_eq!(
            ParityCase::OddPEvenN.expected_groups(4),
            vec![vec![1, 2], vec![0, 3]]
        );
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let inst = PolyInstance::real(5, 2, 1.0).unwrap();
        for (x, fd) in dx_dlambda_fd(&inst, 1e-7).unwrap() {
            let exact = dx_dlambda(x, &inst).unwrap();
            assert!((exact - fd).norm() <= 1e-6, "{exact} vs {fd}");
        }
        let crit = PolyInstance::real(2, 1, 4.0).unwrap();
        assert!(dx_dlambda(Complex64::new(1.0, 0.0), &crit).is_err());
        for (_, rate) in arg_rates(&inst).unwrap() {
            assert!(rate.abs() > 1e-12);
        }
    }
}
