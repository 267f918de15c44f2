//! Exact arithmetic for the Madhava-Leibniz series and its end corrections.
//!
//! The library computes, entirely in exact rational and fixed-point decimal
//! arithmetic:
//!
//! * continued-fraction convergents of the end correction, as rational
//!   functions of the last odd denominator `p` or of the term count `n`
//!   ([`correction`]);
//! * closed forms of the resulting truncation errors (the sthaulya), their
//!   structural properties, and rigorous two-sided error bounds
//!   ([`sthaulya`]);
//! * the transformed fast-converging series obtained from those closed forms,
//!   with auditable rounding bounds ([`series`]);
//! * reconstructions of the correction terms hidden in historical values of
//!   pi by continued-fraction peeling ([`hayashi`]).
//!
//! All interesting results are exact: floating point appears nowhere in the
//! numeric core.

pub mod correction;
pub mod error;
pub mod exactnum;
pub mod hayashi;
pub mod polyalg;
pub mod series;
pub mod sthaulya;

pub use error::{Error, Result};
