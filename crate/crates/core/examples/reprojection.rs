//! Moving balanced words from one slope to a nearby one by inserting zeros.

use balanced_words::words::{continuity_bound, count_balanced_dp, is_balanced, jmax, psi, reproject, sample_balanced, Alpha, BalanceSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> balanced_words::Result<()> {
    let (a, b, r) = (Alpha::new(1, 2), Alpha::new(3, 5), 3);
    let src = BalanceSpec::from_alpha(a, r)?;
    let dst = BalanceSpec::from_alpha(b, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..3 {
        let w = sample_balanced(40, &src, &mut rng);
        let out = reproject(&w, a, b, r)?;
        println!("{w}\n{out}  (+{} zeros)\n{}  balanced: {}\n", out.len() - w.len(), psi(&w, a, b, r)?, is_balanced(&out, &dst));
    }
    println!("jmax(40) = {}", jmax(40, a, b)?);
    for n in [4, 8, 12] {
        println!(
            "n = {n:>2}: |B_a| = {}, |B_b| = {}, K_n = {}",
            count_balanced_dp(n, &src).total(),
            count_balanced_dp(n, &dst).total(),
            continuity_bound(n, a, b, r)?
        );
    }
    Ok(())
}
