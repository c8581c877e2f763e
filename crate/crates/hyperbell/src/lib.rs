//! Exact arithmetic for the Bell and Stirling number families that arise when
//! the hypergeometric-style series F(z) = sum_n z^n / (n!)^(level+1) is
//! exponentiated: exp(F(z) - 1) generates the level-indexed Bell numbers, the
//! powers (F(z) - 1)^l / l! generate the matching Stirling triangle, and
//! dropping the first terms of F before exponentiating generates the
//! restricted variants.
//!
//! Building blocks:
//! - [`exact`]: big integers, big rationals, memoized binomials, factorials,
//!   rising factorials.
//! - [`sequences`]: the recursion-based routes (memoized tables, closed forms,
//!   classical checks).
//! - [`series`]: the formal-power-series route (truncated series, exp/log,
//!   weighted coefficient extraction) used as an independent oracle.
//! - [`analytic`]: certified rational enclosures for the convergent sums the
//!   sequences satisfy (Dobinski-style averages, transcendental identities).
//! - [`oeis`]: b-file parsing/emission, sequence comparison, fetching with a
//!   local cache, and bundled offline fixtures.

pub mod analytic;
mod error;
pub mod exact;
pub mod oeis;
pub mod sequences;
pub mod series;

pub use error::{Error, Result};
pub use exact::{Int, Rat};
