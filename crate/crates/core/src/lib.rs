//! Exact counting of balanced binary words, growth exponents from transfer
//! matrix spectra, and numerical monodromy of `(x+1)^n - lambda x^p`.

// Negated float comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod asympt;
pub mod cli;
pub mod continuation;
pub mod error;
pub mod graphwords;
pub mod monodromy;
pub mod poly;
pub mod transfer;
pub mod util;
pub mod words;

pub use error::{Error, Result};
pub use words::{Alpha, BalanceSpec, Word};
