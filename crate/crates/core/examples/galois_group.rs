//! Monodromy generators and the group they generate.

use balanced_words::monodromy::galois_classify;

fn main() -> balanced_words::Result<()> {
    for &(n, p) in &[(3, 1), (5, 2), (8, 3), (4, 2), (6, 2), (6, 3), (8, 4)] {
        let g = galois_classify(n, p)?;
        println!(
            "n = {n}, p = {p}: around 0 {}, around lambda_c {} (predicted pair {:?}), order {} (expected {})",
            g.zero_loop, g.critical_loop.permutation, g.critical_loop.predicted_pair, g.group.order, g.expected_order
        );
        if let Some(blocks) = &g.t_blocks {
            println!(
                "    blocks {blocks:?}, block action order {:?}, cyclic {:?}, kernel order {}",
                g.quotient_order,
                g.quotient_cyclic,
                g.kernel_order.as_ref().map(|k| k.to_string()).unwrap_or_default()
            );
        }
    }
    Ok(())
}
