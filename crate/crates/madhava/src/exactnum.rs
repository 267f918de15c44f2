//! Exact numeric ground layer: arbitrary-precision rationals and fixed-point
//! decimals with explicit rounding.
//!
//! Rationals are [`num_rational::BigRational`]: always reduced, denominator
//! always positive, zero stored as 0/1. Fixed-point decimals are a scaled
//! integer mantissa; every rounding step is explicit and carries a stated
//! [`Rounding`] mode, so error accounting stays auditable.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// 10^k as a [`BigInt`].
pub fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

/// Builds a reduced rational from integer numerator and denominator.
pub fn rat(numer: i64, denom: i64) -> Result<BigRational> {
    big_rat(BigInt::from(numer), BigInt::from(denom))
}

/// Builds a reduced rational from big integer parts.
pub fn big_rat(numer: BigInt, denom: BigInt) -> Result<BigRational> {
    if denom.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(numer, denom))
}

/// Exact rational division that reports division by zero instead of panicking.
pub fn rat_div(a: &BigRational, b: &BigRational) -> Result<BigRational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

/// Rounding mode for every rational-to-fixed conversion in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    /// Toward negative infinity.
    Floor,
    /// Toward positive infinity.
    Ceil,
    /// To nearest, ties to the even mantissa (banker's rounding).
    HalfEven,
}

/// Rounds the exact integer quotient `n / d` (`d > 0`) per `mode`.
fn round_quotient(n: &BigInt, d: &BigInt, mode: Rounding) -> BigInt {
    debug_assert!(d.is_positive());
    let (q, r) = n.div_mod_floor(d);
    if r.is_zero() {
        return q;
    }
    match mode {
        Rounding::Floor => q,
        Rounding::Ceil => q + 1,
        Rounding::HalfEven => {
            let twice: BigInt = &r * 2;
            match twice.cmp(d) {
                std::cmp::Ordering::Less => q,
                std::cmp::Ordering::Greater => q + 1,
                std::cmp::Ordering::Equal => {
                    if q.is_even() {
                        q
                    } else {
                        q + 1
                    }
                }
            }
        }
    }
}

/// A decimal fixed-point number: `mantissa * 10^(-scale)`.
///
/// Arithmetic never changes the scale silently; addition and subtraction
/// require equal scales (violations are programming errors and panic), and
/// [`FixedDecimal::rescale`] is the one place precision changes, with a stated
/// rounding mode. Comparison across scales is exact and needs no rounding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedDecimal {
    mantissa: BigInt,
    scale: u32,
}

impl FixedDecimal {
    pub fn new(mantissa: BigInt, scale: u32) -> Self {
        FixedDecimal { mantissa, scale }
    }

    /// The integer `i` represented at the given scale (exact).
    pub fn from_int(i: impl Into<BigInt>, scale: u32) -> Self {
        FixedDecimal {
            mantissa: i.into() * pow10(scale),
            scale,
        }
    }

    pub fn zero(scale: u32) -> Self {
        FixedDecimal {
            mantissa: BigInt::zero(),
            scale,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn add(&self, other: &FixedDecimal) -> FixedDecimal {
        assert_eq!(self.scale, other.scale, "scale mismatch in add");
        FixedDecimal::new(&self.mantissa + &other.mantissa, self.scale)
    }

    pub fn sub(&self, other: &FixedDecimal) -> FixedDecimal {
        assert_eq!(self.scale, other.scale, "scale mismatch in sub");
        FixedDecimal::new(&self.mantissa - &other.mantissa, self.scale)
    }

    /// Exact multiplication by an integer (scale unchanged).
    pub fn mul_int(&self, k: impl Into<BigInt>) -> FixedDecimal {
        FixedDecimal::new(&self.mantissa * k.into(), self.scale)
    }

    pub fn neg(&self) -> FixedDecimal {
        FixedDecimal::new(-&self.mantissa, self.scale)
    }

    pub fn abs(&self) -> FixedDecimal {
        FixedDecimal::new(self.mantissa.abs(), self.scale)
    }

    /// Changes the scale. Widening is exact; narrowing rounds per `mode`.
    pub fn rescale(&self, new_scale: u32, mode: Rounding) -> FixedDecimal {
        use std::cmp::Ordering::*;
        match new_scale.cmp(&self.scale) {
            Equal => self.clone(),
            Greater => FixedDecimal::new(
                &self.mantissa * pow10(new_scale - self.scale),
                new_scale,
            ),
            Less => {
                let d = pow10(self.scale - new_scale);
                FixedDecimal::new(round_quotient(&self.mantissa, &d, mode), new_scale)
            }
        }
    }

    /// The exact rational value.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), pow10(self.scale))
    }

    /// Exact value comparison; scales may differ.
    pub fn cmp_value(&self, other: &FixedDecimal) -> std::cmp::Ordering {
        let left = &self.mantissa * pow10(other.scale);
        let right = &other.mantissa * pow10(self.scale);
        left.cmp(&right)
    }

    /// Scientific notation with `sig` significant digits, explicit sign, and a
    /// plain integer exponent, e.g. `+2.5002223e-13`.
    pub fn to_scientific(&self, sig: u32) -> String {
        assert!(sig >= 1);
        if self.mantissa.is_zero() {
            return "0.0".to_string();
        }
        let sign = if self.mantissa.is_negative() { '-' } else { '+' };
        let mag = self.mantissa.abs();
        let ndigits = mag.to_string().len() as i64;
        let want = sig as i64;
        let (mantissa, ndigits) = if ndigits > want {
            let rounded = round_quotient(&mag, &pow10((ndigits - want) as u32), Rounding::HalfEven);
            let rd = rounded.to_string().len() as i64;
            if rd > want {
                // rounding carried into a new leading digit, e.g. 999 -> 100
                (rounded / 10, ndigits + 1)
            } else {
                (rounded, ndigits)
            }
        } else {
            (mag * pow10((want - ndigits) as u32), ndigits)
        };
        let digits = mantissa.to_string();
        let exp = (ndigits - 1) - self.scale as i64;
        if digits.len() == 1 {
            format!("{sign}{digits}e{exp}")
        } else {
            format!("{sign}{}.{}e{exp}", &digits[..1], &digits[1..])
        }
    }
}

impl std::fmt::Display for FixedDecimal {
    /// Fixed-point rendering with exactly `scale` fractional digits.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.scale == 0 {
            return write!(f, "{}", self.mantissa);
        }
        let sign = if self.mantissa.is_negative() { "-" } else { "" };
        let mag = self.mantissa.abs();
        let (int, frac) = mag.div_mod_floor(&pow10(self.scale));
        write!(f, "{sign}{int}.{frac:0>width$}", width = self.scale as usize)
    }
}

/// Rounds an exact rational to a fixed-point decimal at the given scale.
pub fn rat_to_fixed(q: &BigRational, scale: u32, mode: Rounding) -> FixedDecimal {
    // mantissa = round(q * 10^scale); denominators are positive by invariant.
    let n = q.numer() * pow10(scale);
    FixedDecimal::new(round_quotient(&n, q.denom(), mode), scale)
}

/// Floor integer square root: the largest `r` with `r*r <= x`.
pub fn int_isqrt(x: &BigInt) -> Result<BigInt> {
    if x.sign() == Sign::Minus {
        return Err(Error::NegativeSqrt);
    }
    Ok(x.sqrt())
}

/// `sqrt(x)` truncated to `scale` fractional digits:
/// the result `r` satisfies `r <= sqrt(x) < r + 10^(-scale)`.
pub fn fixed_sqrt(x: &BigInt, scale: u32) -> Result<FixedDecimal> {
    let shifted = x * pow10(2 * scale);
    Ok(FixedDecimal::new(int_isqrt(&shifted)?, scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        rat(n, d).unwrap()
    }

    #[test]
    fn rational_invariants_from_backend() {
        let q = r(2, -4);
        assert_eq!(q.numer(), &BigInt::from(-1));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert!(rat(1, 0).is_err());
        let zero = r(0, -7);
        assert!(zero.is_zero());
        assert_eq!(zero.denom(), &BigInt::one());
    }

    #[test]
    fn rat_div_guards_zero() {
        assert_eq!(rat_div(&r(1, 2), &r(0, 1)), Err(Error::DivisionByZero));
        assert_eq!(rat_div(&r(3, 4), &r(3, 2)).unwrap(), r(1, 2));
    }

    #[test]
    fn directed_rounding_of_one_third() {
        let third = r(1, 3);
        assert_eq!(
            rat_to_fixed(&third, 5, Rounding::Floor).mantissa(),
            &BigInt::from(33333)
        );
        assert_eq!(
            rat_to_fixed(&third, 5, Rounding::Ceil).mantissa(),
            &BigInt::from(33334)
        );
        assert_eq!(
            rat_to_fixed(&third, 5, Rounding::HalfEven).mantissa(),
            &BigInt::from(33333)
        );
    }

    #[test]
    fn directed_rounding_is_directed_for_negatives() {
        let q = r(-1, 3);
        assert_eq!(
            rat_to_fixed(&q, 5, Rounding::Floor).mantissa(),
            &BigInt::from(-33334)
        );
        assert_eq!(
            rat_to_fixed(&q, 5, Rounding::Ceil).mantissa(),
            &BigInt::from(-33333)
        );
    }

    #[test]
    fn half_even_breaks_ties_to_even() {
        // 0.05 -> 0.0, 0.15 -> 0.2, 0.375 -> 0.38
        assert_eq!(
            rat_to_fixed(&r(1, 20), 1, Rounding::HalfEven).mantissa(),
            &BigInt::zero()
        );
        assert_eq!(
            rat_to_fixed(&r(3, 20), 1, Rounding::HalfEven).mantissa(),
            &BigInt::from(2)
        );
        assert_eq!(
            rat_to_fixed(&r(3, 8), 2, Rounding::HalfEven).mantissa(),
            &BigInt::from(38)
        );
        // negative tie: -0.05 -> -0.0
        assert_eq!(
            rat_to_fixed(&r(-1, 20), 1, Rounding::HalfEven).mantissa(),
            &BigInt::zero()
        );
    }

    #[test]
    fn isqrt_known_values() {
        assert_eq!(
            int_isqrt(&(BigInt::from(12) * pow10(24))).unwrap(),
            BigInt::from(3464101615137u64)
        );
        assert_eq!(
            int_isqrt(&(BigInt::from(12) * pow10(30))).unwrap(),
            BigInt::from(3464101615137754u64)
        );
        assert_eq!(int_isqrt(&BigInt::from(120000)).unwrap(), BigInt::from(346));
        assert!(int_isqrt(&BigInt::from(-1)).is_err());
    }

    #[test]
    fn fixed_sqrt_truncates() {
        assert_eq!(fixed_sqrt(&BigInt::from(12), 0).unwrap().to_string(), "3");
        let s = fixed_sqrt(&BigInt::from(12), 24).unwrap();
        assert_eq!(s.mantissa().to_string(), "3464101615137754587054892");
        assert_eq!(fixed_sqrt(&BigInt::from(2), 1).unwrap().to_string(), "1.4");
        assert!(fixed_sqrt(&BigInt::from(-3), 2).is_err());
    }

    #[test]
    fn display_pads_fractional_digits() {
        assert_eq!(FixedDecimal::new(BigInt::from(5), 3).to_string(), "0.005");
        assert_eq!(FixedDecimal::new(BigInt::from(-5), 3).to_string(), "-0.005");
        assert_eq!(
            FixedDecimal::new(BigInt::from(31415926), 7).to_string(),
            "3.1415926"
        );
        assert_eq!(FixedDecimal::from_int(7, 0).to_string(), "7");
    }

    #[test]
    fn scientific_rendering() {
        // 0.0997530346604 to 8 significant digits
        let e = FixedDecimal::new(BigInt::from(997530346604u64), 13);
        assert_eq!(e.to_scientific(8), "+9.9753035e-2");
        let tiny = FixedDecimal::new(BigInt::from(-44408921), 23);
        assert_eq!(tiny.to_scientific(8), "-4.4408921e-16");
        // rounding that carries into a new digit: 0.99999999951 -> 1.0000000e0
        let carry = FixedDecimal::new(BigInt::from(99999999951u64), 11);
        assert_eq!(carry.to_scientific(8), "+1.0000000e0");
        assert_eq!(FixedDecimal::zero(9).to_scientific(8), "0.0");
        // padding when fewer digits exist than requested
        let half = FixedDecimal::new(BigInt::from(5), 1);
        assert_eq!(half.to_scientific(3), "+5.00e-1");
    }

    #[test]
    fn rescale_widens_exactly_and_narrows_with_mode() {
        let x = FixedDecimal::new(BigInt::from(12345), 4); // 1.2345
        assert_eq!(x.rescale(6, Rounding::Floor).mantissa(), &BigInt::from(1234500));
        assert_eq!(x.rescale(2, Rounding::Floor).mantissa(), &BigInt::from(123));
        assert_eq!(x.rescale(2, Rounding::Ceil).mantissa(), &BigInt::from(124));
        // 1.2345 -> scale 3 is a tie at 1.234|5: even mantissa 1234 stays
        assert_eq!(
            x.rescale(3, Rounding::HalfEven).mantissa(),
            &BigInt::from(1234)
        );
    }

    #[test]
    fn value_comparison_crosses_scales() {
        let a = FixedDecimal::new(BigInt::from(5), 1); // 0.5
        let b = FixedDecimal::new(BigInt::from(50), 2); // 0.50
        let c = FixedDecimal::new(BigInt::from(51), 2); // 0.51
        assert_eq!(a.cmp_value(&b), std::cmp::Ordering::Equal);
        assert_eq!(a.cmp_value(&c), std::cmp::Ordering::Less);
        assert_eq!(c.cmp_value(&a), std::cmp::Ordering::Greater);
    }

    #[test]
    #[should_panic(expected = "scale mismatch")]
    fn add_rejects_mixed_scales() {
        let a = FixedDecimal::zero(3);
        let b = FixedDecimal::zero(4);
        let _ = a.add(&b);
    }

    fn arb_rational() -> impl Strategy<Value = BigRational> {
        (any::<i64>(), 1..=u32::MAX).prop_map(|(n, d)| r(n, d as i64))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_laws(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!(rat_div(&a, &a).unwrap().is_one());
            }
        }

        #[test]
        fn floor_ceil_bracket_the_value(q in arb_rational(), scale in 0u32..12) {
            let lo = rat_to_fixed(&q, scale, Rounding::Floor);
            let hi = rat_to_fixed(&q, scale, Rounding::Ceil);
            prop_assert!(lo.to_rational() <= q);
            prop_assert!(hi.to_rational() >= q);
            let ulp = BigRational::new(BigInt::one(), pow10(scale));
            prop_assert!(&hi.to_rational() - &lo.to_rational() <= ulp);
            let near = rat_to_fixed(&q, scale, Rounding::HalfEven).to_rational();
            let err = (&near - &q).abs();
            prop_assert!(&err * BigInt::from(2) <= ulp);
        }

        #[test]
        fn isqrt_postcondition(bytes in proptest::collection::vec(any::<u8>(), 1..17)) {
            // arbitrary x with 0 <= x < 10^40
            let x = BigInt::from_bytes_be(Sign::Plus, &bytes) % pow10(40);
            let root = int_isqrt(&x).unwrap();
            prop_assert!(&root * &root <= x);
            let next = &root + 1;
            prop_assert!(&next * &next > x);
        }

        #[test]
        fn fixed_roundtrip_via_rational(n in any::<i64>(), scale in 0u32..15) {
            let fd = FixedDecimal::new(BigInt::from(n), scale);
            let back = rat_to_fixed(&fd.to_rational(), scale, Rounding::HalfEven);
            prop_assert_eq!(fd, back);
        }
    }
}
