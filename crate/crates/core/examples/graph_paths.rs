//! Balanced paths on two-colored graphs and the r-ladder against the
//! unconstrained analog.

use balanced_words::graphwords::{conjecture_scan, count_balanced_paths, enumerate_paths, TwoColoredGraph};
use balanced_words::words::BalanceSpec;

fn main() -> balanced_words::Result<()> {
    // A vertex with two zero loops next to one with a one loop.
    let g: TwoColoredGraph = "2\n0 0 0 2\n0 1 1 1\n1 1 1 1\n1 0 0 1\n".parse()?;
    let spec = BalanceSpec::new(1, 2, 2)?;
    for n in [4, 8, 12] {
        let dp = count_balanced_paths(&g, n, &spec, &[0, 1])?.total();
        println!("n = {n:>2}: DP {dp}, brute force {}", enumerate_paths(&g, n, &spec, &[0, 1])?);
    }
    for (name, graph) in [("words", TwoColoredGraph::words()), ("custom", g)] {
        println!("{name}:");
        for row in conjecture_scan(&graph, 1, 2, &[1, 2, 4, 8, 16], &[0])? {
            println!("  r = {:>2}  e = {:.8}  e~ = {:.8}  irreducible {}", row.r, row.growth, row.tilde, row.irreducible);
        }
    }
    Ok(())
}
