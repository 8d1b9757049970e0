//! Transfer matrices for balanced words and their spectra.
//!
//! One letter step multiplies the count vector by `E + N_+` (floor of
//! `alpha*k` unchanged) or `E + N_-` (floor incremented). Over one period of
//! `alpha = p/n` the ordered product is `M(r)`, a `2r x 2r` nonnegative
//! integer matrix whose Perron root is `e_{alpha,r}^n`.

use nalgebra::{DMatrix, DVector};
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::poly::{self, PolyInstance};
use crate::util::to_f64_checked;
use crate::words::{BalanceSpec, CountVector};

pub const DEFAULT_POWER_TOL: f64 = 1e-12;
pub const DEFAULT_POWER_CAP: usize = 1_000_000;
pub const DEFAULT_SPECTRUM_TOL: f64 = 1e-9;
/// Imaginary parts below this multiple of `||M||` count as real.
pub const REALNESS_THRESHOLD: f64 = 1e-8;
/// Distance from an interval endpoint, relative to `||M||`, below which an
/// eigenvalue counts as on the endpoint.
pub const ENDPOINT_TOL: f64 = 1e-12;
/// Largest dense matrix handed to the eigensolver.
pub const SPECTRUM_DIM_CAP: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// `floor(alpha*k)` unchanged: apply `E + N_+`.
    NoIncrement,
    /// `floor(alpha*k)` incremented: apply `E + N_-`.
    Increment,
}

/// Step kinds for `k = 1..=n` over one period of `p/n`.
pub fn floor_schedule(p: u64, n: u64) -> Result<Vec<StepKind>> {
    let spec = BalanceSpec::new(p, n, 1)?;
    Ok((1..=n)
        .map(|k| {
            if spec.increments_at(k) {
                StepKind::Increment
            } else {
                StepKind::NoIncrement
            }
        })
        .collect())
}

/// Dense square matrix of big nonnegative integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<BigUint>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntMatrix {
            dim,
            data: vec![BigUint::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = BigUint::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return invalid("matrix rows must form a square");
        }
        Ok(IntMatrix {
            dim,
            data: rows.iter().flatten().map(|&x| BigUint::from(x)).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigUint) {
        self.data[i * self.dim + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<BigUint>> {
        self.data.chunks(self.dim).map(<[BigUint]>::to_vec).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = IntMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * d + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigUint]) -> Vec<BigUint> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .filter(|&j| !self.get(i, j).is_zero())
                    .map(|j| self.get(i, j) * &v[j])
                    .sum()
            })
            .collect()
    }

    /// Float copy plus whether any entry exceeded 2^53.
    pub fn to_f64(&self) -> (DMatrix<f64>, bool) {
        let mut lossy = false;
        let m = DMatrix::from_fn(self.dim, self.dim, |i, j| {
            let (x, l) = to_f64_checked(self.get(i, j));
            lossy |= l;
            x
        });
        (m, lossy)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let d = self.dim;
        if d == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = self
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..d - 1 {
            if a[k][k].is_zero() {
                match (k + 1..d).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..d {
                for j in k + 1..d {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v.div_floor(&prev);
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[d - 1][d - 1]
    }

    fn apply_step(&mut self, kind: StepKind) {
        let d = self.dim;
        match kind {
            // (E + N_+) M: row i gains row i-1.
            StepKind::NoIncrement => {
                for i in (1..d).rev() {
                    for j in 0..d {
                        let add = self.data[(i - 1) * d + j].clone();
                        self.data[i * d + j] += add;
                    }
                }
            }
            // (E + N_-) M: row i gains row i+1.
            StepKind::Increment => {
                for i in 0..d.saturating_sub(1) {
                    for j in 0..d {
                        let add = self.data[(i + 1) * d + j].clone();
                        self.data[i * d + j] += add;
                    }
                }
            }
        }
    }
}

/// `E + N_+` or `E + N_-` at size `2r`.
pub fn step_matrix(kind: StepKind, r: u32) -> IntMatrix {
    let mut m = IntMatrix::identity(2 * r as usize);
    m.apply_step(kind);
    m
}

/// The period product `M(r)` for `alpha = p/n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    pub entries: IntMatrix,
    pub p: u64,
    pub n: u64,
    pub r: u32,
}

impl TransferMatrix {
    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    pub fn spec(&self) -> BalanceSpec {
        BalanceSpec::new(self.p, self.n, self.r).expect("validated at construction")
    }

    pub fn to_f64(&self) -> (DMatrix<f64>, bool) {
        self.entries.to_f64()
    }

    /// `n^n / (p^p q^q)` with `q = n - p`: the upper bound on the Perron root.
    pub fn ceiling(&self) -> f64 {
        spectral_ceiling(self.p, self.n)
    }

    /// `M^k b(0)`: the count vector after `k` full periods.
    pub fn counts_after_periods(&self, k: usize) -> CountVector {
        let spec = self.spec();
        let mut b = CountVector::initial(&spec).b;
        for _ in 0..k {
            b = self.entries.mul_vec(&b);
        }
        CountVector {
            b,
            len: k * self.n as usize,
        }
    }
}

/// Ordered product of the step matrices over one period, later steps on the
/// left, so that `b(n) = M b(0)`.
pub fn build_m(p: u64, n: u64, r: u32) -> Result<TransferMatrix> {
    BalanceSpec::new(p, n, r)?;
    let mut m = IntMatrix::identity(2 * r as usize);
    for kind in floor_schedule(p, n)? {
        m.apply_step(kind);
    }
    Ok(TransferMatrix { entries: m, p, n, r })
}

/// `n^n / (p^p (n-p)^(n-p))`.
pub fn spectral_ceiling(p: u64, n: u64) -> f64 {
    let (p, n) = (p as f64, n as f64);
    let q = n - p;
    (n * n.ln() - p * p.ln() - q * q.ln()).exp()
}

/// `(1/alpha)^alpha (1/(1-alpha))^(1-alpha)`.
pub fn tilde_e(alpha: f64) -> f64 {
    (-alpha * alpha.ln() - (1.0 - alpha) * (1.0 - alpha).ln()).exp()
}

#[derive(Clone, Debug)]
pub struct PerronPair {
    pub value: f64,
    /// Unit 2-norm, strictly positive.
    pub vector: DVector<f64>,
    pub iterations: usize,
}

pub fn perron_root(m: &TransferMatrix, tol: f64) -> Result<PerronPair> {
    power_iteration(&m.to_f64().0, tol, DEFAULT_POWER_CAP)
}

/// Dominant eigenpair of a primitive nonnegative matrix by power iteration
/// from the all-ones vector.
///
/// Stops once successive Rayleigh quotients differ by less than `tol` and
/// the geometric tail `rho/(1-rho) * delta` estimated from the last two
/// differences is below `tol` as well.
pub fn power_iteration(m: &DMatrix<f64>, tol: f64, cap: usize) -> Result<PerronPair> {
    let d = m.nrows();
    if d == 0 || m.ncols() != d {
        return invalid("power iteration needs a nonempty square matrix");
    }
    let mut v = DVector::from_element(d, 1.0 / (d as f64).sqrt());
    let mut value = f64::NAN;
    let mut prev_delta = f64::INFINITY;
    for it in 1..=cap {
        let w = m * &v;
        let next = v.dot(&w);
        let norm = w.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Diagnostic("power iteration hit a zero or non-finite vector".into()));
        }
        v = w / norm;
        let delta = (next - value).abs();
        value = next;
        if delta < tol {
            let rho = delta / prev_delta;
            let tail = if rho < 1.0 { delta * rho / (1.0 - rho) } else { f64::INFINITY };
            if delta == 0.0 || tail < tol {
                if v.iter().any(|&x| x <= 0.0) {
                    return Err(Error::Diagnostic(
                        "dominant eigenvector is not strictly positive".into(),
                    ));
                }
                return Ok(PerronPair {
                    value,
                    vector: v,
                    iterations: it,
                });
            }
        }
        prev_delta = delta;
    }
    Err(Error::NonConvergence {
        what: "power iteration",
        iterations: cap,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthEstimate {
    pub perron: f64,
    /// `perron^(1/n)`.
    pub e_alpha_r: f64,
    /// `n^n / (p^p q^q)`.
    pub ceiling: f64,
    /// `tilde e_alpha = ceiling^(1/n)`.
    pub entropy_limit: f64,
}

pub fn growth_exponent(p: u64, n: u64, r: u32) -> Result<GrowthEstimate> {
    let m = build_m(p, n, r)?;
    let perron = perron_root(&m, DEFAULT_POWER_TOL)?.value;
    Ok(GrowthEstimate {
        perron,
        e_alpha_r: perron.powf(1.0 / n as f64),
        ceiling: spectral_ceiling(p, n),
        entropy_limit: tilde_e(p as f64 / n as f64),
    })
}

#[derive(Clone, Debug)]
pub struct Eigenpair {
    pub value: Complex64,
    pub vector: DVector<Complex64>,
    /// `||Mv - lambda v|| / (||M|| ||v||)`.
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct SpectrumReport {
    /// Sorted by decreasing real part.
    pub eigenpairs: Vec<Eigenpair>,
    pub perron: f64,
    pub perron_vector: DVector<f64>,
    pub tolerance: f64,
    /// Frobenius norm of the matrix.
    pub norm: f64,
    /// Entries above 2^53 were rounded when converting to floats.
    pub lossy_conversion: bool,
}

impl SpectrumReport {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.eigenpairs.iter().map(|e| e.value).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.eigenpairs.iter().map(|e| e.residual).fold(0.0, f64::max)
    }

    pub fn is_real(&self, z: Complex64) -> bool {
        z.im.abs() <= REALNESS_THRESHOLD * self.norm
    }

    /// Real parts of the eigenvalues judged real, in decreasing order.
    pub fn real_eigenvalues(&self) -> Vec<f64> {
        self.eigenpairs
            .iter()
            .filter(|e| self.is_real(e.value))
            .map(|e| e.value.re)
            .collect()
    }

    /// All eigenvalues real, positive, and pairwise separated.
    pub fn real_positive_simple(&self) -> bool {
        let reals = self.real_eigenvalues();
        reals.len() == self.eigenpairs.len()
            && reals.iter().all(|&x| x > 0.0)
            && reals.windows(2).all(|w| w[0] - w[1] > REALNESS_THRESHOLD * self.norm)
    }

    /// Real eigenvalues strictly inside `(lo, hi)`. Eigenvalues within
    /// `ENDPOINT_TOL * ||M||` of an endpoint count as on it and are left out:
    /// `1` is an exact eigenvalue of some `M(r)` and lands on either side of
    /// the endpoint by rounding.
    pub fn count_real_in(&self, lo: f64, hi: f64) -> usize {
        let eps = ENDPOINT_TOL * self.norm;
        self.real_eigenvalues()
            .into_iter()
            .filter(|&x| lo + eps < x && x < hi - eps)
            .count()
    }

    pub fn product(&self) -> Complex64 {
        self.eigenpairs.iter().map(|e| e.value).product()
    }
}

pub fn full_spectrum(m: &TransferMatrix, tol: f64) -> Result<SpectrumReport> {
    let (dense, lossy) = m.to_f64();
    let mut report = dense_spectrum(&dense, tol)?;
    report.lossy_conversion = lossy;
    Ok(report)
}

/// Eigenvalues of a dense real matrix from its real Schur form, unsorted.
pub fn eigenvalues(m: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    let d = m.nrows();
    if d == 0 || m.ncols() != d {
        return invalid("spectrum needs a nonempty square matrix");
    }
    if d > SPECTRUM_DIM_CAP {
        return Err(Error::SizeCap {
            what: "dense spectrum dimension",
            limit: SPECTRUM_DIM_CAP,
            got: d,
        });
    }
    let schur = nalgebra::linalg::Schur::try_new(m.clone(), f64::EPSILON, 100_000).ok_or(
        Error::NonConvergence {
            what: "real Schur decomposition",
            iterations: 100_000,
        },
    )?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

/// All eigenpairs of a dense real matrix: eigenvalues from the real Schur
/// form, eigenvectors by inverse iteration, every pair residual-checked.
pub fn dense_spectrum(m: &DMatrix<f64>, tol: f64) -> Result<SpectrumReport> {
    let d = m.nrows();
    if d == 0 || m.ncols() != d {
        return invalid("spectrum needs a nonempty square matrix");
    }
    if d > SPECTRUM_DIM_CAP {
        return Err(Error::SizeCap {
            what: "dense spectrum dimension",
            limit: SPECTRUM_DIM_CAP,
            got: d,
        });
    }
    let norm = m.norm();
    let mut values = eigenvalues(m)?;
    values.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));

    let mut eigenpairs = Vec::with_capacity(d);
    for value in values {
        let (value, vector) = if value.im.abs() <= REALNESS_THRESHOLD * norm {
            let v = real_inverse_iteration(m, value.re, norm);
            (value, v.map(|x| Complex64::new(x, 0.0)))
        } else {
            (value, complex_inverse_iteration(m, value, norm))
        };
        let mc = m.map(|x| Complex64::new(x, 0.0));
        let r = &mc * &vector - &vector * value;
        let residual = r.norm() / (norm * vector.norm());
        if !(residual <= tol) {
            return Err(Error::Diagnostic(format!(
                "eigenpair residual {residual:e} exceeds {tol:e} at lambda = {value}"
            )));
        }
        eigenpairs.push(Eigenpair {
            value,
            vector,
            residual,
        });
    }

    let dominant = eigenpairs
        .iter()
        .filter(|e| e.value.im.abs() <= REALNESS_THRESHOLD * norm)
        .max_by(|a, b| a.value.re.total_cmp(&b.value.re))
        .ok_or_else(|| Error::Diagnostic("no real eigenvalue found".into()))?;
    let perron = dominant.value.re;
    if eigenpairs
        .iter()
        .any(|e| e.value.norm() > perron * (1.0 + 1e-10) + REALNESS_THRESHOLD * norm)
    {
        return Err(Error::Diagnostic("largest real eigenvalue is not dominant".into()));
    }
    let mut perron_vector = dominant.vector.map(|z| z.re);
    if perron_vector.sum() < 0.0 {
        perron_vector = -perron_vector;
    }
    let pv_norm = perron_vector.norm();
    perron_vector /= pv_norm;

    Ok(SpectrumReport {
        eigenpairs,
        perron,
        perron_vector,
        tolerance: tol,
        norm,
        lossy_conversion: false,
    })
}

fn start_vector(d: usize) -> DVector<f64> {
    // Deterministic, with no special alignment to the structured eigenvectors.
    DVector::from_fn(d, |i, _| 1.0 + ((i * 7919 + 13) % 101) as f64 / 101.0)
}

fn real_inverse_iteration(m: &DMatrix<f64>, mu: f64, norm: f64) -> DVector<f64> {
    let d = m.nrows();
    let shift = mu + 64.0 * f64::EPSILON * norm.max(mu.abs());
    let a = m - DMatrix::identity(d, d) * shift;
    let lu = a.lu();
    let mut v = start_vector(d);
    v /= v.norm();
    for _ in 0..3 {
        match lu.solve(&v) {
            Some(w) if w.iter().all(|x| x.is_finite()) && w.norm() > 0.0 => {
                v = w.clone() / w.norm();
            }
            _ => break,
        }
    }
    v
}

fn complex_inverse_iteration(m: &DMatrix<f64>, mu: Complex64, norm: f64) -> DVector<Complex64> {
    let d = m.nrows();
    let eps = 64.0 * f64::EPSILON * norm.max(mu.norm());
    let shift = mu + Complex64::new(eps, eps);
    let a = m.map(|x| Complex64::new(x, 0.0)) - DMatrix::identity(d, d) * shift;
    let lu = a.lu();
    let mut v = start_vector(d).map(|x| Complex64::new(x, 0.0));
    v /= Complex64::new(v.norm(), 0.0);
    for _ in 0..3 {
        match lu.solve(&v) {
            Some(w) if w.iter().all(|x| x.re.is_finite() && x.im.is_finite()) => {
                let n = w.norm();
                if n == 0.0 {
                    break;
                }
                v = w / Complex64::new(n, 0.0);
            }
            _ => break,
        }
    }
    v
}

fn check_interval(p: u64, n: u64, lo: f64, hi: f64) -> Result<f64> {
    let ceiling = spectral_ceiling(p, n);
    if !(0.0 <= lo && lo < hi && hi <= ceiling * (1.0 + 1e-12)) {
        return invalid(format!(
            "interval ({lo}, {hi}) must satisfy 0 <= lo < hi <= {ceiling}"
        ));
    }
    Ok(ceiling)
}

/// Number of real eigenvalues of `M(r)` in the open interval `(lo, hi)`.
pub fn count_spectrum_in(p: u64, n: u64, r: u32, lo: f64, hi: f64) -> Result<usize> {
    BalanceSpec::new(p, n, r)?;
    check_interval(p, n, lo, hi)?;
    let report = full_spectrum(&build_m(p, n, r)?, DEFAULT_SPECTRUM_TOL)?;
    Ok(report.count_real_in(lo, hi))
}

/// Sign of a determinant by Gaussian elimination with partial pivoting;
/// 0 when a pivot vanishes exactly.
pub fn determinant_sign(mut a: DMatrix<f64>) -> i8 {
    let d = a.nrows();
    let mut sign = 1i8;
    for k in 0..d {
        let (piv, max) = (k..d)
            .map(|i| (i, a[(i, k)].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("nonempty column");
        if max == 0.0 {
            return 0;
        }
        if piv != k {
            a.swap_rows(piv, k);
            sign = -sign;
        }
        let pivot = a[(k, k)];
        if pivot < 0.0 {
            sign = -sign;
        }
        for i in k + 1..d {
            let f = a[(i, k)] / pivot;
            if f != 0.0 {
                for j in k + 1..d {
                    let v = a[(k, j)];
                    a[(i, j)] -= f * v;
                }
            }
        }
    }
    sign
}

/// Sign changes of `det(M - lambda E)` along a sorted grid. A zero at a grid
/// point counts as one change.
pub fn oscillation_scan(p: u64, n: u64, r: u32, grid: &[f64]) -> Result<usize> {
    let m = build_m(p, n, r)?;
    if grid.is_empty() {
        return Ok(0);
    }
    let ceiling = m.ceiling();
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return invalid("grid must be strictly increasing");
    }
    if !(grid[0] > 0.0 && grid[grid.len() - 1] < ceiling) {
        return invalid(format!("grid must lie inside (0, {ceiling})"));
    }
    let (dense, _) = m.to_f64();
    let d = dense.nrows();
    let signs: Vec<i8> = grid
        .iter()
        .map(|&lambda| determinant_sign(&dense - DMatrix::identity(d, d) * lambda))
        .collect();
    let zeros = signs.iter().filter(|&&s| s == 0).count();
    let flips = signs.windows(2).filter(|w| w[0] * w[1] < 0).count();
    Ok(zeros + flips)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CandidateFit {
    /// Exponent `e` in `(x+1)^n = lambda x^e`.
    pub exponent: u64,
    /// `||A c - v|| / ||v||` for the best combination of power sequences.
    pub residual: f64,
    pub min_root_separation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryReport {
    pub lambda: f64,
    pub candidates: Vec<CandidateFit>,
    pub winner: u64,
    /// Losing residual over winning residual (infinite when only one candidate).
    pub separation_ratio: f64,
}

/// Fits an eigenvector of `M(r)` by combinations of power sequences
/// `(x_i^0, ..., x_i^(2r-1))`, where `x_i` run over the roots of
/// `(x+1)^n = lambda x^e`, for both candidate exponents `e = p` and `e = n-p`.
/// The interior rows of `M v = lambda v` are an order-`n` linear recurrence,
/// so the right exponent fits to rounding error.
pub fn boundary_recurrence_check(
    p: u64,
    n: u64,
    r: u32,
    lambda: f64,
    vector: &DVector<f64>,
) -> Result<BoundaryReport> {
    BalanceSpec::new(p, n, r)?;
    let len = 2 * r as usize;
    if len <= 2 * n as usize {
        return invalid(format!("boundary fit needs 2r > 2n, got r={r}, n={n}"));
    }
    if vector.len() != len {
        return invalid("eigenvector length must be 2r");
    }
    let mut exponents = vec![p, n - p];
    exponents.dedup();
    let vnorm = vector.norm();
    let rhs = vector.map(|x| Complex64::new(x, 0.0));

    let mut candidates = Vec::new();
    for &e in &exponents {
        let inst = PolyInstance::new(n as u32, e as u32, Complex64::new(lambda, 0.0))?;
        let roots = poly::roots(&inst, poly::DEFAULT_ROOT_TOL)?;
        if roots.min_separation < 1e-8 {
            return Err(Error::IllConditioned(format!(
                "roots for exponent {e} nearly collide (separation {:e})",
                roots.min_separation
            )));
        }
        // Columns scaled to unit max entry.
        let a = DMatrix::from_fn(len, roots.roots.len(), |j, i| {
            let x = roots.roots[i];
            let scale = x.norm().max(1.0).powi(len as i32 - 1);
            x.powi(j as i32) / scale
        });
        let svd = a.clone().svd(true, true);
        let coeffs = svd
            .solve(&rhs, 1e-300)
            .map_err(|e| Error::IllConditioned(e.to_string()))?;
        let residual = (&a * coeffs - &rhs).norm() / vnorm;
        candidates.push(CandidateFit {
            exponent: e,
            residual,
            min_root_separation: roots.min_separation,
        });
    }
    let best = candidates
        .iter()
        .min_by(|a, b| a.residual.total_cmp(&b.residual))
        .expect("at least one candidate");
    let winner = best.exponent;
    let separation_ratio = match candidates.iter().find(|c| c.exponent != winner) {
        Some(other) => other.residual / best.residual.max(f64::MIN_POSITIVE),
        None => f64::INFINITY,
    };
    Ok(BoundaryReport {
        lambda,
        candidates,
        winner,
        separation_ratio,
    })
}

/// Binomial prediction for an interior entry (0-based `k`, `j`):
/// `C(n, k - j + p)`, zero outside `0..=n`.
pub fn interior_entry(p: u64, n: u64, k: usize, j: usize) -> BigUint {
    let idx = k as i64 - j as i64 + p as i64;
    if idx < 0 || idx > n as i64 {
        BigUint::zero()
    } else {
        crate::util::binomial(n, idx as u64)
    }
}

/// Whether the exact determinant equals 1.
pub fn is_unimodular(m: &TransferMatrix) -> bool {
    m.entries.determinant().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::count_balanced_dp;

    #[test]
    fn schedule_examples() {
        use StepKind::*;
        assert_eq!(floor_schedule(1, 2).unwrap(), vec![NoIncrement, Increment]);
        let s = floor_schedule(1, 7).unwrap();
        assert_eq!(s.iter().filter(|&&k| k == Increment).count(), 1);
        assert_eq!(s[6], Increment);
        for (p, n) in [(2, 5), (3, 7), (5, 8)] {
            let inc = floor_schedule(p, n).unwrap().into_iter().filter(|&k| k == Increment).count();
            assert_eq!(inc as u64, p);
        }
        assert!(floor_schedule(2, 4).is_err());
    }

    #[test]
    fn step_matrix_examples() {
        let plus = step_matrix(StepKind::NoIncrement, 1);
        assert_eq!(plus, IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]]).unwrap());
        let minus = step_matrix(StepKind::Increment, 1);
        assert_eq!(minus, IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap());
        let big = step_matrix(StepKind::NoIncrement, 4);
        for row in big.rows() {
            let s: BigUint = row.iter().sum();
            assert!(s == BigUint::from(1u32) || s == BigUint::from(2u32));
        }
    }

    #[test]
    fn build_m_small() {
        let m = build_m(1, 2, 1).unwrap();
        assert_eq!(m.entries, IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap());
        assert!(is_unimodular(&m));
    }

    #[test]
    fn matrix_reproduces_dp() {
        let m = build_m(1, 3, 2).unwrap();
        let spec = m.spec();
        for k in 0..=5 {
            assert_eq!(m.counts_after_periods(k), count_balanced_dp(3 * k, &spec));
        }
    }

    #[test]
    fn perron_of_golden_matrix() {
        let m = build_m(1, 2, 1).unwrap();
        let pair = perron_root(&m, 1e-13).unwrap();
        let expected = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((pair.value - expected).abs() < 1e-12);
        assert!(pair.vector.iter().all(|&x| x > 0.0));
        let triangular = step_matrix(StepKind::NoIncrement, 1).to_f64().0;
        // A Jordan block: power iteration crawls, so only check the estimate.
        match power_iteration(&triangular, 1e-6, 10_000) {
            Ok(pp) => assert!((pp.value - 1.0).abs() < 1e-3),
            Err(Error::NonConvergence { .. }) => {}
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn growth_golden_ratio() {
        let g = growth_exponent(1, 2, 1).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((g.e_alpha_r - phi).abs() < 1e-12);
        assert!((g.entropy_limit - 2.0).abs() < 1e-15);
        assert!((g.ceiling - 4.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_two_by_two() {
        let m = build_m(1, 2, 1).unwrap();
        let rep = full_spectrum(&m, 1e-12).unwrap();
        let ev = rep.real_eigenvalues();
        assert!((ev[0] - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-13);
        assert!((ev[1] - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-13);
        assert!((rep.product().re - 1.0).abs() < 1e-12);
        assert!(full_spectrum(&build_m(1, 2, 4).unwrap(), 1e-9).unwrap().real_positive_simple());
    }

    #[test]
    fn spectrum_cap() {
        let big = DMatrix::<f64>::identity(201, 201);
        assert!(matches!(dense_spectrum(&big, 1e-9), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn interval_counting() {
        assert_eq!(count_spectrum_in(1, 2, 1, 0.0, 4.0).unwrap(), 2);
        assert!(count_spectrum_in(1, 2, 1, 1.0, 4.5).is_err());
        assert!(count_spectrum_in(1, 2, 1, 2.0, 1.0).is_err());
    }

    #[test]
    fn oscillation_examples() {
        assert_eq!(oscillation_scan(1, 2, 1, &[0.1, 1.0, 3.0, 3.9]).unwrap(), 2);
        assert_eq!(oscillation_scan(1, 2, 1, &[]).unwrap(), 0);
        assert!(oscillation_scan(1, 2, 1, &[1.0, 0.5]).is_err());
        assert!(oscillation_scan(1, 2, 1, &[1.0, 4.5]).is_err());
    }

    #[test]
    fn determinant_sign_basics() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert_eq!(determinant_sign(a), -1);
        let z = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert_eq!(determinant_sign(z), 0);
    }

    #[test]
    fn exact_determinant() {
        let m = IntMatrix::from_rows(&[vec![2, 3], vec![1, 4]]).unwrap();
        assert_eq!(m.determinant(), BigInt::from(5));
        let m = IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(m.determinant(), BigInt::from(-1));
    }

    #[test]
    fn boundary_fit_prefers_complementary_exponent() {
        let m = build_m(1, 3, 12).unwrap();
        let pair = perron_root(&m, 1e-14).unwrap();
        let rep = boundary_recurrence_check(1, 3, 12, pair.value, &pair.vector).unwrap();
        assert_eq!(rep.winner, 2);
        let best = rep.candidates.iter().find(|c| c.exponent == 2).unwrap();
        assert!(best.residual <= 1e-8, "{rep:?}");
        assert!(rep.separation_ratio >= 1e3);
        assert!(boundary_recurrence_check(1, 3, 3, pair.value, &pair.vector).is_err());
    }
}
