//! Small exact-arithmetic helpers shared by several modules.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Exact binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Natural logarithm of a big integer, valid far beyond the `f64` range.
pub fn big_ln(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Converts to `f64`, reporting whether the value exceeded the exactly
/// representable integer range (2^53).
pub fn to_f64_checked(x: &BigUint) -> (f64, bool) {
    let lossy = x.bits() > 53;
    (x.to_f64().unwrap_or(f64::INFINITY), lossy)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_matches_pascal() {
        let mut row = vec![BigUint::one()];
        for n in 1..=60u64 {
            let mut next = vec![BigUint::one(); n as usize + 1];
            for k in 1..n as usize {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
            for k in 0..=n {
                assert_eq!(binomial(n, k), row[k as usize]);
            }
        }
        assert!(binomial(3, 4).is_zero());
    }

    #[test]
    fn big_ln_large_values() {
        let x = BigUint::one() << 5000u32;
        let expected = 5000.0 * std::f64::consts::LN_2;
        assert!((big_ln(&x) - expected).abs() < 1e-9 * expected);
        assert!((big_ln(&BigUint::from(1000u32)) - 1000f64.ln()).abs() < 1e-12);
    }
}
