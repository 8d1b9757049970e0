//! Exact counts of balanced words against brute force and the end-only count.

use balanced_words::words::{count_balanced_dp, count_unconstrained, enumerate_balanced, BalanceSpec};

fn main() -> balanced_words::Result<()> {
    let spec = BalanceSpec::new(2, 5, 2)?;
    println!("alpha = {}, r = {}", spec.alpha(), spec.r());
    println!("{:>3} {:>8} {:>8} {:>8}", "n", "|B|", "brute", "|B~|");
    for n in 0..=14 {
        let dp = count_balanced_dp(n, &spec).total();
        let brute = enumerate_balanced(n, &spec)?.len();
        println!("{n:>3} {dp:>8} {brute:>8} {:>8}", count_unconstrained(n, &spec));
    }
    let big = count_balanced_dp(500, &spec).total();
    println!("|B_500| has {} decimal digits", big.to_string().len());
    Ok(())
}
