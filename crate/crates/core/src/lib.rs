//! Word maps on `PSL2(F_q)`.
//!
//! Two-variable free-group words, their Fricke trace polynomials in `Z[s, t, u]`,
//! exact verification of the trace identities for the words
//! `x1^{±2} y_k` and `x1^2 y_{-k}` (with `y_1 = x1^2 x2 x1^{±2} x2^-1`),
//! the arithmetic conditions under which those words miss every involution of
//! `PSL2(F_{p^n})`, and brute-force certificates over small fields.

pub mod arith;
pub mod corpus;
pub mod error;
pub mod gf;
pub mod poly;
pub mod tracepoly;
pub mod word;

pub use error::{Error, Result};
pub use poly::{TracePolynomial, UniPoly};
pub use word::{Letter, Shape, Sign, Word, WordFamily};
