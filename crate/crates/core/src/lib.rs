//! Exact algebra for bivariate Fibonacci and Lucas polynomials.
//!
//! [`poly`] provides sparse polynomials that are ordinary in `x` and Laurent
//! in `y`. [`sequences`] generates `F_n`, `L_n` and the general second-order
//! family for every integer index, [`derivatives`] builds partial derivatives
//! by several independent routes, and [`verifier`] checks the resulting
//! identities over index ranges by exact polynomial equality.

pub mod cli;
pub mod derivatives;
pub mod error;
pub mod poly;
pub mod rational;
pub mod sequences;
pub mod verifier;

pub use derivatives::{DerivMethod, Wrt};
pub use error::{Error, Result};
pub use poly::{LaurentBiPoly, Term};
pub use rational::RationalValue;
pub use sequences::{fib, lucas, SeqSpec};
