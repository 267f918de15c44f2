//! End-correction terms for the Madhava-Leibniz series.
//!
//! Truncating pi/4 = 1 - 1/3 + 1/5 - ... after the term with odd denominator
//! `p = 2n - 1` and adding a signed correction `f(p)` gives far better
//! estimates than the bare partial sum. The optimal correction is the
//! continued fraction
//!
//! ```text
//! f(p) = 1/(2p+2 + 4/(2p+2 + 16/(2p+2 + 36/(2p+2 + ...))))
//! ```
//!
//! with partial numerators `(2j)^2`. This module computes its convergents
//! exactly as rational functions of `p`, or of the term count `n` via
//! `p = 2n - 1`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::polyalg::{IntPoly, RatFun};

/// A convergent of the correction continued fraction, in both variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectionTerm {
    pub order: u32,
    /// Correction as a function of the last odd denominator `p`.
    pub p_form: RatFun,
    /// The same function of the term count `n`, via `p = 2n - 1`.
    pub n_form: RatFun,
}

/// The `k`-th convergent of the correction continued fraction, computed by
/// the standard three-term recurrence
///
/// ```text
/// A_j = b_j A_{j-1} + a_j A_{j-2},   a_1 = 1, a_j = (2(j-1))^2, b_j = t,
/// ```
///
/// carried out in the variable `t = 2p + 2` and substituted back at the end,
/// which keeps every intermediate polynomial small.
pub fn convergent(k: u32) -> Result<CorrectionTerm> {
    if k == 0 {
        return Err(Error::domain("convergent order must be at least 1"));
    }
    let t = IntPoly::x();
    // (A_0, B_0) = (0, 1); (A_1, B_1) = (1, t)
    let (mut a_prev, mut b_prev) = (IntPoly::zero(), IntPoly::one());
    let (mut a_cur, mut b_cur) = (IntPoly::one(), t.clone());
    for j in 2..=u64::from(k) {
        let part = BigInt::from(2 * (j - 1)).pow(2);
        let a_next = t.mul(&a_cur).add(&a_prev.mul_scalar(&part));
        let b_next = t.mul(&b_cur).add(&b_prev.mul_scalar(&part));
        (a_prev, b_prev) = (a_cur, b_cur);
        (a_cur, b_cur) = (a_next, b_next);
    }
    let two = BigInt::from(2);
    let p_form = RatFun::new(
        a_cur.compose_linear(&two, &two),
        b_cur.compose_linear(&two, &two),
    )?;
    let n_form = p_form.compose_linear(2, -1);
    Ok(CorrectionTerm { order: k, p_form, n_form })
}

/// The first five convergents as they are usually written down, stored as
/// literal coefficient lists rather than computed, so tests can cross-check
/// the recurrence against an independent record. Defined for `k = 1..=5`;
/// published closed forms in `n` exist for `k = 1..=3`, the rest substitute
/// `p = 2n - 1`.
pub fn closed_form(k: u32) -> Result<CorrectionTerm> {
    let (num, den) = match k {
        1 => (vec![1], vec![2, 2]),
        2 => (vec![1, 1], vec![2, 4, 4]),
        3 => (vec![1, 2, 5], vec![2, 6, 16, 12]),
        4 => (vec![1, 3, 16, 14], vec![2, 8, 40, 64, 48]),
        5 => (vec![1, 4, 35, 62, 94], vec![2, 10, 80, 200, 368, 240]),
        _ => {
            return Err(Error::domain(format!(
                "closed forms are recorded for orders 1 through 5, got {k}"
            )))
        }
    };
    let p_form = RatFun::new(IntPoly::desc(&num), IntPoly::desc(&den))?;
    let n_form = match k {
        1 => RatFun::new(IntPoly::desc(&[1]), IntPoly::desc(&[4, 0]))?,
        2 => RatFun::new(IntPoly::desc(&[1, 0]), IntPoly::desc(&[4, 0, 1]))?,
        3 => RatFun::new(IntPoly::desc(&[1, 0, 1]), IntPoly::desc(&[4, 0, 5, 0]))?,
        _ => p_form.compose_linear(2, -1),
    };
    Ok(CorrectionTerm { order: k, p_form, n_form })
}

/// Exact value of the order-`k` correction after `n` series terms.
pub fn eval_correction(k: u32, n: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::domain("term count must be at least 1"));
    }
    let term = convergent(k)?;
    let p = BigRational::from(BigInt::from(2 * n - 1));
    term.p_form.eval(&p)
}
