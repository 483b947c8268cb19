//! Difference polynomials in one difference indeterminate over the rationals.
//!
//! The ring `Q{y}` has variables `y0, y1, y2, ...`, where `y_k` is the `k`-th
//! transform of `y` and the translation `sigma` sends `y_k` to `y_{k+1}`
//! (acting trivially on coefficients). On top of exact sparse arithmetic the
//! crate provides:
//!
//! * [`witness`]: the family `u(n) = y_{n+2^n-1} * y_{n+2^(n+1)-1}` and
//!   `A(n) = u(2n-2) + u(2n-1)`, plus exhaustive scans of the power-of-two
//!   effective-order combinatorics that make the family work.
//! * [`ideal`]: sigma-ideal presentations, an exact decision procedure for the
//!   degree-2 homogeneous part of `[A(1), ..., A(m)]`, Gram-rank factorization of
//!   quadratic forms, the mixed-closure shuffle `S -> [S]'`, and certificates
//!   that `<A(1)> < <A(1), A(2)> < ...` is strictly ascending, i.e. that the
//!   ascending chain condition fails for mixed difference ideals.
//! * [`cli`]: the command-line front end and its JSON reports.
//!
//! Since every mixed difference ideal is complete, the same chain also shows
//! that ACC fails for complete difference ideals; no separate machinery exists
//! for that.

pub mod cli;
pub mod error;
pub mod ideal;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod witness;

pub use error::{Error, Result};
pub use poly::{Coefficient, DiffPoly, Exponent, Term, VarIndex};
