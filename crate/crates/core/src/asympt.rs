//! Saddle-point asymptotics of the coefficients of `G = 1/(1 - x - y)`,
//! i.e. of `C(r+s, r)`, and the entropy limit `e~_alpha`.

use num_bigint::BigUint;

use crate::error::{invalid, Error, Result};
use crate::util::{big_ln, binomial};

pub use crate::transfer::tilde_e;

/// `e~_alpha` for a rational slope.
pub fn tilde_e_rational(p: u64, n: u64) -> Result<f64> {
    if p == 0 || p >= n {
        return invalid(format!("need 0 < p/n < 1, got {p}/{n}"));
    }
    Ok(tilde_e(p as f64 / n as f64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Direction {
    pub r: u64,
    pub s: u64,
}

impl Direction {
    pub fn new(r: u64, s: u64) -> Result<Self> {
        if r == 0 || s == 0 {
            return invalid(format!("direction needs r, s >= 1, got ({r}, {s})"));
        }
        Ok(Direction { r, s })
    }

    pub fn scaled(&self, k: u64) -> Direction {
        Direction {
            r: self.r * k,
            s: self.s * k,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalPoint {
    pub x: f64,
    pub y: f64,
    /// `|D(x, y)|` with `D = 1 - x - y`.
    pub d_residual: f64,
    /// `|s x D_x - r y D_y|`, normalized by `r + s`.
    pub direction_residual: f64,
}

/// Closed-form solution of `D = 0`, `s x D_x = r y D_y`.
pub fn critical_point(dir: Direction) -> CriticalPoint {
    let (r, s) = (dir.r as f64, dir.s as f64);
    let x = r / (r + s);
    let y = s / (r + s);
    let (dx, dy) = (-1.0, -1.0);
    CriticalPoint {
        x,
        y,
        d_residual: (1.0 - x - y).abs(),
        direction_residual: (s * x * dx - r * y * dy).abs() / (r + s),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticEstimate {
    pub dir: Direction,
    pub point: CriticalPoint,
    pub q: f64,
    /// `ln f_rs`; `f_rs` itself overflows for large directions.
    pub ln_f: f64,
    pub f_rs: f64,
    pub exact: BigUint,
    pub rel_error: f64,
}

/// `f_rs = x^-r y^-s sqrt(-y D_y / (s Q)) / sqrt(2 pi)` with `P = 1`.
pub fn pemantle_estimate(dir: Direction) -> Result<AsymptoticEstimate> {
    let point = critical_point(dir);
    let (x, y) = (point.x, point.y);
    let (dx, dy) = (-1.0, -1.0);
    // Second derivatives of D vanish, leaving two terms.
    let q = -x * dx * (y * dy).powi(2) - y * dy * (x * dx).powi(2);
    if !(q > 0.0) {
        return Err(Error::Contract(format!("Q = {q} is not positive")));
    }
    let arg = -y * dy / (dir.s as f64 * q);
    if !(arg > 0.0) {
        return Err(Error::Contract(format!("square-root argument {arg} is not positive")));
    }
    let ln_f = -(dir.r as f64) * x.ln() - (dir.s as f64) * y.ln() + 0.5 * arg.ln()
        - 0.5 * (2.0 * std::f64::consts::PI).ln();
    let exact = binomial_exact(dir.r, dir.s);
    let rel_error = ((ln_f - big_ln(&exact)).exp() - 1.0).abs();
    Ok(AsymptoticEstimate {
        dir,
        point,
        q,
        ln_f,
        f_rs: ln_f.exp(),
        exact,
        rel_error,
    })
}

/// `C(r+s, r)`.
pub fn binomial_exact(r: u64, s: u64) -> BigUint {
    binomial(r + s, r)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NthRootCheck {
    pub n: u64,
    pub r: u64,
    pub s: u64,
    /// `f_{r,s}^{1/n}`.
    pub estimate_root: f64,
    /// `C(n, r)^{1/n}`.
    pub exact_root: f64,
    pub tilde_e: f64,
    pub gap: f64,
}

/// Compares `f_{floor(alpha n), n - floor(alpha n)}^{1/n}` with `e~_alpha`.
pub fn nth_root_check(p: u64, period: u64, n: u64) -> Result<NthRootCheck> {
    let te = tilde_e_rational(p, period)?;
    let r = p * n / period;
    let dir = Direction::new(r, n - r)?;
    let est = pemantle_estimate(dir)?;
    let estimate_root = (est.ln_f / n as f64).exp();
    Ok(NthRootCheck {
        n,
        r,
        s: n - r,
        estimate_root,
        exact_root: (big_ln(&est.exact) / n as f64).exp(),
        tilde_e: te,
        gap: (estimate_root - te).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tilde_e_values() {
        assert!((tilde_e(0.5) - 2.0).abs() < 1e-15);
        let third = 3f64.powf(1.0 / 3.0) * 1.5f64.powf(2.0 / 3.0);
        assert!((tilde_e(1.0 / 3.0) - third).abs() < 1e-14);
        assert!((tilde_e(0.3) - tilde_e(0.7)).abs() < 1e-14);
        assert!(tilde_e_rational(0, 3).is_err());
        let n = 3000;
        let root = (big_ln(&binomial(n, n / 3)) / n as f64).exp();
        assert!((root - third).abs() < 5e-3);
    }

    #[test]
    fn critical_point_examples() {
        let c = critical_point(Direction::new(5, 5).unwrap());
        assert_eq!((c.x, c.y), (0.5, 0.5));
        let c = critical_point(Direction::new(1, 2).unwrap());
        assert!((c.x - 1.0 / 3.0).abs() < 1e-15 && (c.y - 2.0 / 3.0).abs() < 1e-15);
        assert!(c.d_residual < 1e-14 && c.direction_residual < 1e-14);
        assert!(Direction::new(0, 1).is_err());
    }

    #[test]
    fn estimate_examples() {
        let a = pemantle_estimate(Direction::new(50, 50).unwrap()).unwrap();
        let b = pemantle_estimate(Direction::new(200, 200).unwrap()).unwrap();
        assert!(a.rel_error <= 0.02 && b.rel_error <= 0.01 && b.rel_error < a.rel_error);
        assert!(a.q > 0.0);
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_exact(0, 7), BigUint::from(1u32));
        assert_eq!(binomial_exact(3, 9), binomial_exact(9, 3));
        assert_eq!(binomial_exact(2, 2), BigUint::from(6u32));
    }
}
