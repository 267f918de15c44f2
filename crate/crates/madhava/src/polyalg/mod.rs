//! Univariate polynomial and rational-function arithmetic over the integers
//! and rationals, with a canonical reduced form for rational functions.
//!
//! Everything here is exact. [`IntPoly`] is the workhorse (integer
//! coefficients, ascending storage, no trailing zeros); [`RatPoly`] adds
//! rational coefficients where division demands them; [`RatFun`] is a reduced
//! quotient of two integer polynomials with a unique representation, so
//! structural equality is mathematical equality.

mod poly;
mod ratfun;

pub use poly::{IntPoly, RatPoly};
pub use ratfun::RatFun;
