//! Exact counting of Lyndon factors and Lyndon subsequences.
//!
//! The crate evaluates the closed forms for the maximum, total and expected
//! numbers of Lyndon factors and subsequences in strings of length `n` over
//! an ordered alphabet of size `sigma`, builds extremal witness strings, and
//! checks every closed form against exhaustive enumeration at small scale.
//!
//! ```
//! use lyndon_count::formulas::{mts, mts_witness};
//! use lyndon_count::words::{count_lyndon_subsequence_occurrences, DEFAULT_MAX_SUBSETS};
//!
//! let w = mts_witness(2, 5).unwrap();
//! assert_eq!(w.to_string(), "aabbb");
//! assert_eq!(
//!     count_lyndon_subsequence_occurrences(&w, DEFAULT_MAX_SUBSETS).unwrap(),
//!     mts(2, 5).unwrap()
//! );
//! ```
//!
//! Oracle enumeration is data-parallel over `Sigma^n` through rayon when the
//! default `parallel` feature is on; [`Execution::Sequential`] is always
//! available and produces identical results.

#![forbid(unsafe_code)]

pub mod cli;
pub mod error;
pub mod exactnum;
pub mod formulas;
pub mod lyndon_enum;
pub mod oracle;
mod par;
pub mod words;

pub use error::{Error, Result};
pub use par::Execution;
