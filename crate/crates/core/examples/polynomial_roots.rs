//! Roots of (x+1)^n - lambda x^p: critical data, small-lambda labels and the
//! modulus ordering along the real axis.

use balanced_words::poly::{
    critical_data, detect_double_root, modulus_ordering_on_grid, roots, small_lambda_roots, PolyInstance,
    DEFAULT_ROOT_TOL,
};

fn main() -> balanced_words::Result<()> {
    let (n, p) = (5, 2);
    let c = critical_data(n, p)?;
    let d = detect_double_root(n, p)?;
    println!("lambda_c = {} = {:.12}, detected {:.12} at x = {:.12}", c.lambda_crit_exact, c.lambda_crit, d.lambda, d.x);

    let small = small_lambda_roots(n, p, 1e-3)?;
    println!("first-order labels at eps = 1e-3 are off by {:.2e}", small.max_error);

    for lambda in [1.0, c.lambda_crit, 100.0] {
        let set = roots(&PolyInstance::real(n, p, lambda)?, if lambda == c.lambda_crit { 1e-6 } else { DEFAULT_ROOT_TOL })?;
        let shown: Vec<String> = set.roots.iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect();
        println!("lambda = {lambda:.4}: {}", shown.join("  "));
    }

    let grid: Vec<f64> = (1..=5).map(|k| c.lambda_crit * k as f64 / 6.0).collect();
    for rep in modulus_ordering_on_grid(n, p, &grid)? {
        let m: Vec<String> = rep.moduli.iter().map(|m| format!("{m:.5}")).collect();
        println!("lambda = {:>8.4} {:?} |x_j| = [{}] pattern ok: {}", rep.lambda, rep.case, m.join(", "), rep.matched);
    }
    Ok(())
}
