//! Closed forms of the truncation error (the sthaulya) left by each
//! correction order, their structural properties, and rigorous error bounds.
//!
//! For a correction `f`, the sthaulya is the rational function
//!
//! ```text
//! I(p) = f(p - 2) + f(p) - 1/p,
//! ```
//!
//! the exact amount by which consecutive corrected partial sums drift. For
//! the continued-fraction convergents `f_k` the sthaulya collapses to a
//! constant over an odd monic polynomial, e.g. `1/(p^3-p)` and `-4/(p^5+4p)`
//! for the first two orders. The error of the corrected estimate after `n`
//! terms is sandwiched by half the sthaulya at `2n+1` and `2n-1`, which is
//! what [`error_bounds`] returns.
//!
//! The module also exposes four one-parameter families of candidate
//! corrections in both raw (unreduced) and reduced form; the raw numerators
//! are what show how the continued-fraction choice is the only member of each
//! family that cancels an extra order of error.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::correction::convergent;
use crate::error::{Error, Result};
use crate::polyalg::{IntPoly, RatFun, RatPoly};

/// A sthaulya closed form: a constant numerator over a monic odd polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sthaulya {
    pub order: u32,
    /// The full rational function `I_k(p)`.
    pub expr: RatFun,
    /// Constant numerator `N_k = (-1)^(k+1) (k!)^2`.
    pub numerator: BigInt,
    /// Monic denominator `D_k` of degree `2k+1`.
    pub denominator: IntPoly,
}

/// Builds the sthaulya of the order-`k` convergent:
/// `I_k(p) = f_k(p-2) + f_k(p) - 1/p`.
pub fn sthaulya_of(k: u32) -> Result<Sthaulya> {
    let f = convergent(k)?.p_form;
    let expr = apply_sthaulya(&f);
    let numerator = match expr.num().degree() {
        Some(0) => expr.num().coeff(0),
        // a theorem for every convergent; anything else is a library bug
        _ => unreachable!("sthaulya numerator must be constant"),
    };
    let denominator = expr.den().clone();
    Ok(Sthaulya { order: k, expr, numerator, denominator })
}

/// `f(p-2) + f(p) - 1/p` for any candidate correction `f`.
pub fn apply_sthaulya(f: &RatFun) -> RatFun {
    let inv_p = RatFun::new(IntPoly::one(), IntPoly::x()).expect("p is nonzero");
    f.shift(-2).add(f).sub(&inv_p)
}

/// One structural check within a [`PropertyReport`].
#[derive(Debug, Clone)]
pub struct PropertyCheck {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

/// The eight structural properties of a sthaulya closed form, all verified
/// against the actual polynomials. The degree of `D_k` is `2k+1` and the
/// heavy inner coefficient sits at `p^(2k-1)`; the report names these
/// exponents explicitly since they are easy to get wrong by two.
#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub order: u32,
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl std::fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "sthaulya structure for k={} (denominator degree 2k+1, inner coefficient at p^(2k-1)):",
            self.order
        )?;
        for check in &self.checks {
            let mark = if check.pass { "ok  " } else { "FAIL" };
            writeln!(f, "  [{mark}] {}: {}", check.name, check.witness)?;
        }
        Ok(())
    }
}

fn factorial_squared(k: u32) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=k {
        f *= i;
    }
    &f * &f
}

/// `psi_k`: the primitive part of the order-`k` convergent's denominator,
/// with the factor `p+1` removed when `k` is odd. These are the building
/// blocks of the sthaulya denominator factorizations.
pub fn psi_extract(k: u32) -> Result<IntPoly> {
    let den = convergent(k)?.p_form.den().primitive_part();
    if k % 2 == 1 {
        Ok(den
            .exact_div(&IntPoly::desc(&[1, 1]))
            .expect("odd-order convergent denominators carry a factor p+1"))
    } else {
        Ok(den)
    }
}

/// The recorded factor table for `psi_2` through `psi_7`, kept as literal
/// coefficients so factorization checks compare against an independent
/// transcription rather than against [`psi_extract`] itself.
pub fn psi_reference(k: u32) -> Option<IntPoly> {
    Some(match k {
        2 => IntPoly::desc(&[1, 2, 2]),
        3 => IntPoly::desc(&[1, 2, 6]),
        4 => IntPoly::desc(&[1, 4, 20, 32, 24]),
        5 => IntPoly::desc(&[1, 4, 36, 64, 120]),
        6 => IntPoly::desc(&[1, 2, 10]).mul(&IntPoly::desc(&[1, 4, 52, 96, 72])),
        7 => IntPoly::desc(&[1, 6, 106, 384, 2080, 3408, 5040]),
        _ => return None,
    })
}

/// Verifies the eight structural properties of `I_k` and reports each with a
/// witness string.
pub fn verify_properties(k: u32) -> Result<PropertyReport> {
    let s = sthaulya_of(k)?;
    let d = &s.denominator;
    let mut checks = Vec::with_capacity(8);

    let expected_num = {
        let mag = factorial_squared(k);
        if k % 2 == 1 { mag } else { -mag }
    };
    checks.push(PropertyCheck {
        name: "numerator is (-1)^(k+1) (k!)^2".into(),
        pass: s.numerator == expected_num,
        witness: format!("numerator = {}", s.numerator),
    });

    let deg = d.degree();
    checks.push(PropertyCheck {
        name: "denominator is monic of degree 2k+1".into(),
        pass: d.is_monic() && deg == Some(2 * k as usize + 1),
        witness: format!(
            "degree = {:?}, leading coefficient = {:?}",
            deg.map(|v| v as i64),
            d.leading()
        ),
    });

    let odd_only = (0..=deg.unwrap_or(0))
        .step_by(2)
        .all(|i| d.coeff(i).is_zero());
    checks.push(PropertyCheck {
        name: "denominator has odd powers of p only".into(),
        pass: odd_only,
        witness: format!("D = {d}"),
    });

    checks.push(PropertyCheck {
        name: "denominator vanishes at p = 0".into(),
        pass: d.coeff(0).is_zero(),
        witness: format!("constant term = {}", d.coeff(0)),
    });

    // coefficient of p^(2k-1): k(k-2)(2k+1)/3, equivalently
    // 2(1^2+...+k^2) - (1+2+...+2k); both formulas are computed and compared.
    let via_product = BigInt::from(k) * BigInt::from(k as i64 - 2) * BigInt::from(2 * k + 1);
    debug_assert!((&via_product % 3u32).is_zero());
    let via_product = via_product / 3;
    let via_sums = {
        let squares: BigInt = (1..=k).map(|i| BigInt::from(i) * i).sum();
        let naturals: BigInt = (1..=2 * k).map(BigInt::from).sum();
        squares * 2 - naturals
    };
    let actual = d.coeff(2 * k as usize - 1);
    checks.push(PropertyCheck {
        name: "coefficient of p^(2k-1) is k(k-2)(2k+1)/3 = 2*sum(i^2,i=1..k) - sum(i,i=1..2k)".into(),
        pass: actual == via_product && via_product == via_sums,
        witness: format!("coefficient = {actual}, formulas give {via_product} and {via_sums}"),
    });

    checks.push(PropertyCheck {
        name: "coefficient of p is (-1)^k (k!)^2".into(),
        pass: d.coeff(1) == -&expected_num,
        witness: format!("coefficient = {}", d.coeff(1)),
    });

    // factorization through the convergent denominators, an independent route
    let psi = psi_extract(k)?;
    let psi_neg = psi.compose_linear(&BigInt::from(-1), &BigInt::zero());
    let psi_pair = psi.mul(&psi_neg);
    if k % 2 == 1 {
        let lead = IntPoly::desc(&[1, -1]) // p - 1
            .mul(&IntPoly::x())
            .mul(&IntPoly::desc(&[1, 1])); // p + 1
        let product = lead.mul(&psi_pair);
        checks.push(PropertyCheck {
            name: "odd k: D = (p-1) p (p+1) psi(p) psi(-p)".into(),
            pass: product == *d,
            witness: format!("psi = {psi}"),
        });
        checks.push(PropertyCheck {
            name: "even k: D = p psi(p) psi(-p)".into(),
            pass: true,
            witness: "not applicable at odd k".into(),
        });
    } else {
        let product = IntPoly::x().mul(&psi_pair);
        checks.push(PropertyCheck {
            name: "odd k: D = (p-1) p (p+1) psi(p) psi(-p)".into(),
            pass: true,
            witness: "not applicable at even k".into(),
        });
        checks.push(PropertyCheck {
            name: "even k: D = p psi(p) psi(-p)".into(),
            pass: product == *d,
            witness: format!("psi = {psi}"),
        });
    }

    Ok(PropertyReport { order: k, checks })
}

/// Two-sided and simple error bounds for the order-`k` corrected estimate
/// after `n` terms: the true error lies strictly between `|I_k(2n+1)|/2` and
/// `|I_k(2n-1)|/2`, and `|I_k(2n+1)|` alone is already an upper bound for
/// the next estimate's error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorBounds {
    pub lower: BigRational,
    pub upper: BigRational,
    pub simple_upper: BigRational,
}

pub fn error_bounds(k: u32, n: u64) -> Result<ErrorBounds> {
    if !(1..=5).contains(&k) {
        return Err(Error::domain(format!(
            "bounds are established for correction orders 1 through 5, got {k}"
        )));
    }
    if n < 2 {
        return Err(Error::domain("bounds need a term count of at least 2"));
    }
    let s = sthaulya_of(k)?;
    let at = |p: u64| -> Result<BigRational> {
        Ok(s.expr.eval(&BigRational::from(BigInt::from(p)))?.abs())
    };
    let inner = at(2 * n + 1)?;
    let outer = at(2 * n - 1)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    Ok(ErrorBounds {
        lower: &inner * &half,
        upper: &outer * &half,
        simple_upper: inner,
    })
}

/// Raw sthaulya parts `(numerator, denominator)` for a candidate correction
/// given as `f = fnum/fden`: numerator `p (N2 D0 + N0 D2) - D2 D0` and
/// denominator `p D2 D0`, where index 2 marks evaluation at `p - 2`. Nothing
/// is cancelled, so coefficient patterns in the numerator survive.
fn sthaulya_raw(fnum: &RatPoly, fden: &RatPoly) -> (RatPoly, RatPoly) {
    let minus_two = BigRational::from(BigInt::from(-2));
    let one = BigRational::one();
    let n0 = fnum.clone();
    let d0 = fden.clone();
    let n2 = fnum.compose_linear(&one, &minus_two);
    let d2 = fden.compose_linear(&one, &minus_two);
    let p = RatPoly::x();
    let num = p.mul(&n2.mul(&d0).add(&n0.mul(&d2))).sub(&d2.mul(&d0));
    let den = p.mul(&d2).mul(&d0);
    (num, den)
}

fn linear(c1: i64, c0: &BigRational) -> RatPoly {
    RatPoly::new(vec![c0.clone(), BigRational::from(BigInt::from(c1))])
}

/// Candidate family `f = 1/(2p + 2 + c)`: raw sthaulya parts.
pub fn offset_family_raw(c: &BigRational) -> (RatPoly, RatPoly) {
    let two = BigRational::from(BigInt::from(2));
    let num = RatPoly::constant(BigRational::one());
    let den = linear(2, &(&two + c));
    sthaulya_raw(&num, &den)
}

/// Candidate family `f = 1/(2p + 2 + m/(2p + 2))`: raw sthaulya parts.
pub fn nested2_family_raw(m: &BigRational) -> (RatPoly, RatPoly) {
    let two = BigRational::from(BigInt::from(2));
    let b0 = linear(2, &two);
    let num = b0.clone();
    let den = b0.mul(&b0).add(&RatPoly::constant(m.clone()));
    sthaulya_raw(&num, &den)
}

/// Candidate family `f = 1/(2p + 2 + 4/(2p + 2 + m/(2p + 2)))`: raw parts.
pub fn nested3_family_raw(m: &BigRational) -> (RatPoly, RatPoly) {
    let two = BigRational::from(BigInt::from(2));
    let four = BigRational::from(BigInt::from(4));
    let b0 = linear(2, &two);
    let b0_sq = b0.mul(&b0);
    let num = b0_sq.add(&RatPoly::constant(m.clone()));
    let den = b0.mul(&b0_sq.add(&RatPoly::constant(m + four)));
    sthaulya_raw(&num, &den)
}

/// Candidate family `f = 1/(2p + 2 + 4/(2p + 2 + c))`: raw sthaulya parts.
pub fn nested_offset_family_raw(c: &BigRational) -> (RatPoly, RatPoly) {
    let two = BigRational::from(BigInt::from(2));
    let four = RatPoly::constant(BigRational::from(BigInt::from(4)));
    let b0 = linear(2, &two);
    let c0 = linear(2, &(&two + c));
    let num = c0.clone();
    let den = b0.mul(&c0).add(&four);
    sthaulya_raw(&num, &den)
}

/// Reduced sthaulya for a raw family pair.
pub fn family_reduced(raw: (RatPoly, RatPoly)) -> Result<RatFun> {
    RatFun::from_rat_polys(&raw.0, &raw.1)
}

/// Reduced sthaulya of the offset family `f = 1/(2p + 2 + k_const)`; the
/// choice `k_const = 0` is the order-1 convergent and the only member whose
/// error falls off one power faster.
pub fn sthaulya_offset_family(k_const: &BigRational) -> RatFun {
    family_reduced(offset_family_raw(k_const)).expect("family denominator is a nonzero polynomial")
}

/// Reduced sthaulya of the two- or three-level nested family (see
/// [`nested2_family_raw`] and [`nested3_family_raw`]); `m = 4` at level 2 and
/// `m = 16` at level 3 recover the order-2 and order-3 convergents.
pub fn sthaulya_nested_family(level: u32, m: &BigRational) -> Result<RatFun> {
    let raw = match level {
        2 => nested2_family_raw(m),
        3 => nested3_family_raw(m),
        _ => {
            return Err(Error::domain(format!(
                "nested family is defined for levels 2 and 3, got {level}"
            )))
        }
    };
    family_reduced(raw)
}

/// Reduced sthaulya of the nested-offset family
/// `f = 1/(2p + 2 + 4/(2p + 2 + k_prime))`; `k_prime = 0` is the order-2
/// convergent.
pub fn sthaulya_nested_offset(k_prime: &BigRational) -> RatFun {
    family_reduced(nested_offset_family_raw(k_prime))
        .expect("family denominator is a nonzero polynomial")
}
