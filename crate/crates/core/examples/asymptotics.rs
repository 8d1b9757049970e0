//! Saddle-point estimate of C(r+s, r) and the n-th root limit.

use balanced_words::asympt::{nth_root_check, pemantle_estimate, tilde_e, Direction};

fn main() -> balanced_words::Result<()> {
    for &(r, s) in &[(50, 50), (200, 200), (100, 200), (30, 90)] {
        let est = pemantle_estimate(Direction::new(r, s)?)?;
        println!("(r, s) = ({r}, {s}): point ({:.4}, {:.4}), rel error {:.3e}", est.point.x, est.point.y, est.rel_error);
    }
    for n in [100, 200, 500, 5000] {
        let c = nth_root_check(1, 3, n)?;
        println!("n = {n:>4}: f^(1/n) = {:.5}, C(n, r)^(1/n) = {:.5}, e~ = {:.5}, gap {:.4}", c.estimate_root, c.exact_root, c.tilde_e, c.gap);
    }
    println!("e~_1/2 = {}", tilde_e(0.5));
    Ok(())
}
