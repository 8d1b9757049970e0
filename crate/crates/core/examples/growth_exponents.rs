//! e_{alpha,r} from the Perron root of M(r), approaching e~_alpha as r grows.

use balanced_words::transfer::{build_m, growth_exponent};

fn main() -> balanced_words::Result<()> {
    for &(p, n) in &[(1, 2), (2, 5), (3, 7)] {
        println!("alpha = {p}/{n}");
        for r in [1, 2, 5, 10, 20, 40] {
            let g = growth_exponent(p, n, r)?;
            println!("  r = {r:>2}  e = {:.12}  e~ = {:.12}  gap = {:.3e}", g.e_alpha_r, g.entropy_limit, g.entropy_limit - g.e_alpha_r);
        }
    }
    let m = build_m(1, 2, 1)?;
    println!("M(1) for alpha = 1/2: {:?}", m.entries.rows());
    println!("closed form e_1/2,1 = {:.15}", ((3.0 + 5f64.sqrt()) / 2.0).sqrt());
    Ok(())
}
