//! Numerical continuation of the roots of `(x+1)^n - lambda x^p` along a
//! path in the `lambda` plane.
//!
//! Each step predicts with `dx/dlambda = x(x+1) / (lambda((n-p)x - p))`,
//! corrects with Newton at the new `lambda`, and halves the step whenever a
//! root would move more than a third of the current minimum separation or
//! the corrected roots stop matching their predictions one-to-one.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::PolyInstance;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrackOptions {
    /// Initial number of uniform steps over the whole path.
    pub samples: usize,
    /// Hard cap: the step never drops below `1 / max_samples`.
    pub max_samples: usize,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions {
            samples: 64,
            max_samples: 1 << 16,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Tracked {
    /// Roots at the end of the path, in the input order.
    pub roots: Vec<Complex64>,
    pub steps: usize,
    pub min_separation: f64,
}

pub(crate) fn min_separation(xs: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            best = best.min((xs[i] - xs[j]).norm());
        }
    }
    best
}

/// Newton iterations on `P` at fixed `lambda`.
pub(crate) fn newton_polish(inst: &PolyInstance, mut x: Complex64, iters: usize) -> Option<Complex64> {
    for _ in 0..iters {
        let d = inst.derivative(x);
        if d.norm() == 0.0 {
            return None;
        }
        let step = inst.eval(x) / d;
        x -= step;
        if !(x.re.is_finite() && x.im.is_finite()) {
            return None;
        }
        if step.norm() <= 4.0 * f64::EPSILON * (1.0 + x.norm()) {
            break;
        }
    }
    Some(x)
}

/// Continues `start` (roots at `path(0)`) to `path(1)`.
pub fn track<F>(n: u32, p: u32, path: F, start: &[Complex64], opts: TrackOptions) -> Result<Tracked>
where
    F: Fn(f64) -> Complex64,
{
    let min_h = 1.0 / opts.max_samples as f64;
    let mut h = 1.0 / opts.samples.max(1) as f64;
    let mut t = 0.0f64;
    let mut lambda = path(0.0);
    let base = PolyInstance::new(n, p, lambda)?;
    let mut xs: Vec<Complex64> = start
        .iter()
        .map(|&x| newton_polish(&base, x, 50).unwrap_or(x))
        .collect();
    let mut steps = 0usize;
    let mut overall_sep = min_separation(&xs);

    while t < 1.0 {
        let step = h.min(1.0 - t);
        let t_next = if step >= 1.0 - t { 1.0 } else { t + step };
        let lambda_next = path(t_next);
        match try_step(n, p, &xs, lambda, lambda_next)? {
            Some(next) => {
                xs = next;
                t = t_next;
                lambda = lambda_next;
                steps += 1;
                overall_sep = overall_sep.min(min_separation(&xs));
                // Grow back after successful steps, never beyond the initial size.
                h = (h * 1.5).min(1.0 / opts.samples.max(1) as f64);
            }
            None => {
                h *= 0.5;
                if h < min_h {
                    return Err(Error::RefinementLimit {
                        limit: opts.max_samples,
                    });
                }
            }
        }
        if steps > 4 * opts.max_samples {
            return Err(Error::RefinementLimit {
                limit: opts.max_samples,
            });
        }
    }
    Ok(Tracked {
        roots: xs,
        steps,
        min_separation: overall_sep,
    })
}

fn try_step(
    n: u32,
    p: u32,
    xs: &[Complex64],
    lambda: Complex64,
    lambda_next: Complex64,
) -> Result<Option<Vec<Complex64>>> {
    let sep = min_separation(xs);
    if !(sep > 1e-12) {
        return Err(Error::SeparationCollapse {
            lambda: format!("{lambda}"),
            separation: sep,
        });
    }
    let inst = PolyInstance::new(n, p, lambda)?;
    let target = PolyInstance::new(n, p, lambda_next)?;
    let dl = lambda_next - lambda;
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        let slope = match inst.dx_dlambda_raw(x) {
            Some(s) => s,
            None => return Ok(None),
        };
        let predicted = x + slope * dl;
        if (predicted - x).norm() > sep / 3.0 {
            return Ok(None);
        }
        let corrected = match newton_polish(&target, predicted, 30) {
            Some(c) => c,
            None => return Ok(None),
        };
        if (corrected - predicted).norm() > sep / 6.0 {
            return Ok(None);
        }
        out.push(corrected);
    }
    if min_separation(&out) < sep / 3.0 {
        return Ok(None);
    }
    Ok(Some(out))
}

/// Index of the root in `to` nearest to each root in `from`; `None` unless
/// the matching is a bijection.
pub(crate) fn match_nearest(from: &[Complex64], to: &[Complex64]) -> Option<Vec<usize>> {
    let mut used = vec![false; to.len()];
    let mut out = Vec::with_capacity(from.len());
    for &x in from {
        let (j, _) = to
            .iter()
            .enumerate()
            .map(|(j, &y)| (j, (x - y).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        if used[j] {
            return None;
        }
        used[j] = true;
        out.push(j);
    }
    Some(out)
}
