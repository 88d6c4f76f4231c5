//! Divisors of `N` in the residue class `r mod S`.
//!
//! Finds every `d | N` with `d ≡ r (mod S)`, or equivalently every ring
//! solution of `(Sx + r)(Sy + r') = N`, over the rational integers, the five
//! imaginary quadratic rings of integers that are Euclidean for the complex
//! absolute value (`d = -1, -2, -3, -7, -11`) and `Z[x]`.
//!
//! The method builds a chain of congruences `a_k x + b_k y ≡ c_k (mod S)` from
//! Euclidean remainders of `S` and `r' r^{-1}`, then shows that for some index
//! the term `a_k x + b_k y` is small enough that the congruence collapses to a
//! bounded list of equalities. Each equality, together with the product
//! equation, is a quadratic whose roots are checked exactly. When
//! `|S|^3 > |N|` (resp. `3 deg S >= deg N`) the search is complete and runs in
//! time polynomial in `log |N|` (resp. `deg N`).
//!
//! Module map:
//! - [`rings`]: exact arithmetic, Euclidean division, gcd, inverses, square roots
//! - [`remseq`]: problem instances and the remainder-triple chain
//! - [`solver`]: right-hand-side enumeration and the per-candidate solve
//! - [`algorithms`]: per-ring drivers and divisor reports
//! - [`oracle`]: brute-force ground truth, independent of the above
//! - [`families`]: known extremal examples and a record search
//! - [`cli`]: the `find`, `bench`, `verify` and `search` commands

pub mod algorithms;
pub mod cli;
mod error;
pub mod families;
pub mod oracle;
pub mod remseq;
pub mod rings;
pub mod solver;

pub use error::{Error, Result};
