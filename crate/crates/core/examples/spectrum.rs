//! Full spectrum of M(r), interval counts, the determinant sign scan and the
//! boundary fit of the Perron vector.

use balanced_words::transfer::{
    boundary_recurrence_check, build_m, full_spectrum, oscillation_scan, DEFAULT_SPECTRUM_TOL,
};

fn main() -> balanced_words::Result<()> {
    let grid: Vec<f64> = (0..2000).map(|i| 1.0 + 2.5 * (i as f64 + 0.5) / 2000.0).collect();
    for r in [5, 10, 20, 40] {
        let m = build_m(1, 2, r)?;
        let s = full_spectrum(&m, DEFAULT_SPECTRUM_TOL)?;
        println!(
            "r = {r:>2}: det = {}, in (1, 3.5): {:>2}, sign changes: {:>2}, real positive simple: {}, residual {:.1e}",
            m.entries.determinant(),
            s.count_real_in(1.0, 3.5),
            oscillation_scan(1, 2, r, &grid)?,
            s.real_positive_simple(),
            s.max_residual()
        );
    }
    let m = build_m(1, 3, 12)?;
    let s = full_spectrum(&m, DEFAULT_SPECTRUM_TOL)?;
    let fit = boundary_recurrence_check(1, 3, 12, s.perron, &s.perron_vector)?;
    for c in &fit.candidates {
        println!("alpha = 1/3, exponent {}: residual {:.2e}", c.exponent, c.residual);
    }
    println!("winner: (x+1)^3 = lambda x^{}", fit.winner);
    Ok(())
}
