use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyalg::{IntPoly, RatPoly};

/// A rational function as a reduced quotient of integer polynomials.
///
/// The representation is canonical, so `==` decides mathematical equality:
///
/// * numerator and denominator share no polynomial factor (their primitive
///   parts are coprime in `Q[x]`);
/// * the integer contents of numerator and denominator are coprime;
/// * the denominator's leading coefficient is positive;
/// * zero is `0/1`.
///
/// Note the content split leaves familiar shapes intact: `1/(2p+2)` keeps its
/// denominator (the 2 cannot move into the numerator's content).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun {
    num: IntPoly,
    den: IntPoly,
}

impl RatFun {
    /// Builds and reduces `num/den`. Errors if `den` is the zero polynomial.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFun {
                num: IntPoly::zero(),
                den: IntPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) && g.is_monic() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num
                .exact_div(&IntPoly::constant(c.clone()))
                .expect("content divides");
            den = den.exact_div(&IntPoly::constant(c)).expect("content divides");
        }
        if den.leading().unwrap().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(RatFun { num, den })
    }

    /// Builds from rational-coefficient parts by clearing denominators first.
    pub fn from_rat_polys(num: &RatPoly, den: &RatPoly) -> Result<RatFun> {
        let (ni, nm) = num.clear_denominators();
        let (di, dm) = den.clear_denominators();
        // num/den = (ni/nm)/(di/dm) = (ni*dm)/(di*nm)
        RatFun::new(ni.mul_scalar(&dm), di.mul_scalar(&nm))
    }

    pub fn zero() -> RatFun {
        RatFun {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> RatFun {
        RatFun {
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    pub fn from_poly(p: IntPoly) -> RatFun {
        RatFun::new(p, IntPoly::one()).expect("denominator one")
    }

    pub fn constant(q: &BigRational) -> RatFun {
        RatFun::new(
            IntPoly::constant(q.numer().clone()),
            IntPoly::constant(q.denom().clone()),
        )
        .expect("rational denominator is nonzero")
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFun::new(num, den).expect("product of nonzero denominators")
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        RatFun::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("product of nonzero denominators")
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn recip(&self) -> Result<RatFun> {
        RatFun::one().div(self)
    }

    /// Substitutes `x <- a*x + b` with integer `a`, `b` (`a` may be any
    /// integer, including zero or negative).
    pub fn compose_linear(&self, a: i64, b: i64) -> RatFun {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        RatFun::new(
            self.num.compose_linear(&a, &b),
            self.den.compose_linear(&a, &b),
        )
        .expect("linear substitution keeps denominator nonzero")
    }

    /// Substitutes `x <- x + k`.
    pub fn shift(&self, k: i64) -> RatFun {
        self.compose_linear(1, k)
    }

    /// Exact evaluation; errors at a pole.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let den = self.den.eval(x);
        if den.is_zero() {
            return Err(Error::Pole(x.clone()));
        }
        Ok(self.num.eval(x) / den)
    }

    /// Renders as `num/(den)` with `var` as the variable, descending powers:
    /// `-4/(p^5+4p)`, `(p+1)/(2p^2+4p+4)`, `1/(4n)`. A constant denominator
    /// needs no parentheses; a denominator of one is omitted.
    pub fn render(&self, var: char) -> String {
        if self.den.is_one() {
            return self.num.render(var);
        }
        let num = if self.num.term_count() > 1 {
            format!("({})", self.num.render(var))
        } else {
            self.num.render(var)
        };
        let den = if self.den.degree() == Some(0) {
            self.den.render(var)
        } else {
            format!("({})", self.den.render(var))
        };
        format!("{num}/{den}")
    }
}

impl std::fmt::Display for RatFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render('p'))
    }
}

trait IsOne {
    fn is_one(&self) -> bool;
}

impl IsOne for IntPoly {
    fn is_one(&self) -> bool {
        self.degree() == Some(0) && self.coeff(0).is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn br(n: i64, d: i64) -> BigRational {
        BigRational::new(bi(n), bi(d))
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFun {
        RatFun::new(IntPoly::desc(num), IntPoly::desc(den)).unwrap()
    }

    #[test]
    fn reduction_cancels_polynomial_and_integer_factors() {
        // (4p+4)/(2p^2+4p+2) = 2/(p+1)
        let f = rf(&[4, 4], &[2, 4, 2]);
        assert_eq!(f, rf(&[2], &[1, 1]));
        assert_eq!(f.render('p'), "2/(p+1)");
    }

    #[test]
    fn reduction_leaves_coprime_contents_alone() {
        // 1/(2p+2) is already canonical: the 2 stays put
        let f = rf(&[1], &[2, 2]);
        assert_eq!(f.num(), &IntPoly::one());
        assert_eq!(f.den(), &IntPoly::desc(&[2, 2]));
        assert_eq!(f.render('p'), "1/(2p+2)");
        let g = rf(&[1, 2, 5], &[2, 6, 16, 12]);
        assert_eq!(g.render('p'), "(p^2+2p+5)/(2p^3+6p^2+16p+12)");
    }

    #[test]
    fn denominator_sign_is_normalized() {
        let f = RatFun::new(IntPoly::one(), IntPoly::desc(&[-1, 0])).unwrap();
        assert_eq!(f.render('p'), "-1/(p)");
        assert_eq!(f.num(), &IntPoly::constant(BigInt::from(-1)));
        assert_eq!(f.den(), &IntPoly::x());
        assert_eq!(rf(&[-4], &[1, 0, 0, 0, 4, 0]).render('p'), "-4/(p^5+4p)");
    }

    #[test]
    fn zero_and_constant_forms() {
        assert!(RatFun::new(IntPoly::zero(), IntPoly::desc(&[3, 1])).unwrap().is_zero());
        assert!(RatFun::new(IntPoly::one(), IntPoly::zero()).is_err());
        assert_eq!(RatFun::constant(&br(-6, 4)).render('p'), "-3/2");
        assert_eq!(RatFun::from_poly(IntPoly::desc(&[1, 1])).render('p'), "p+1");
    }

    #[test]
    fn arithmetic_reduces_results() {
        // 1/(p-1) + 1/(p+1) = 2p/(p^2-1)
        let a = rf(&[1], &[1, -1]);
        let b = rf(&[1], &[1, 1]);
        assert_eq!(a.add(&b), rf(&[2, 0], &[1, 0, -1]));
        // x/x - 1 = 0
        let x = rf(&[1, 0], &[1, 0]);
        assert!(x.sub(&RatFun::one()).is_zero());
        // (1/p) * p = 1
        let inv = rf(&[1], &[1, 0]);
        assert_eq!(inv.mul(&RatFun::from_poly(IntPoly::x())), RatFun::one());
        assert!(a.div(&RatFun::zero()).is_err());
        assert_eq!(a.div(&a).unwrap(), RatFun::one());
    }

    #[test]
    fn shift_and_substitution() {
        // f = 1/(2p+2); f at p-2 is 1/(2p-2)
        let f = rf(&[1], &[2, 2]);
        assert_eq!(f.shift(-2), rf(&[1], &[2, -2]));
        // p = 2n-1 turns 1/(2p+2) into 1/(4n)
        let n_form = f.compose_linear(2, -1);
        assert_eq!(n_form, rf(&[1], &[4, 0]));
        assert_eq!(n_form.render('n'), "1/(4n)");
    }

    #[test]
    fn evaluation_and_poles() {
        let f = rf(&[1, 1], &[1, 0, -1]); // (p+1)/(p^2-1) = 1/(p-1)
        assert_eq!(f.eval(&br(3, 1)).unwrap(), br(1, 2));
        assert_eq!(f.eval(&br(1, 1)), Err(Error::Pole(br(1, 1))));
        // reduction removed the pole at -1
        assert_eq!(f.eval(&br(-1, 1)).unwrap(), br(-1, 2));
    }

    #[test]
    fn from_rat_polys_clears_denominators() {
        // (x/2) / (x^2/3 + 1) = 3x/(2x^2 + 6)
        let num = RatPoly::new(vec![br(0, 1), br(1, 2)]);
        let den = RatPoly::new(vec![br(1, 1), br(0, 1), br(1, 3)]);
        let f = RatFun::from_rat_polys(&num, &den).unwrap();
        assert_eq!(f, rf(&[3, 0], &[2, 0, 6]));
    }

    fn arb_poly() -> impl Strategy<Value = IntPoly> {
        proptest::collection::vec(-6i64..=6, 0..4)
            .prop_map(|v| IntPoly::new(v.into_iter().map(BigInt::from).collect()))
    }

    fn arb_nonzero_poly() -> impl Strategy<Value = IntPoly> {
        arb_poly().prop_filter("nonzero", |p| !p.is_zero())
    }

    fn arb_ratfun() -> impl Strategy<Value = RatFun> {
        (arb_poly(), arb_nonzero_poly()).prop_map(|(n, d)| RatFun::new(n, d).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn canonical_form_ignores_common_factors(
            n in arb_poly(),
            d in arb_nonzero_poly(),
            m in arb_nonzero_poly(),
        ) {
            let plain = RatFun::new(n.clone(), d.clone()).unwrap();
            let scaled = RatFun::new(n.mul(&m), d.mul(&m)).unwrap();
            prop_assert_eq!(plain, scaled);
        }

        #[test]
        fn field_identities(a in arb_ratfun(), b in arb_ratfun(), k in -4i64..=4) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert!(a.sub(&a).is_zero());
            if !b.is_zero() {
                prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
            }
            // shift distributes over + and *
            prop_assert_eq!(a.add(&b).shift(k), a.shift(k).add(&b.shift(k)));
            prop_assert_eq!(a.mul(&b).shift(k), a.shift(k).mul(&b.shift(k)));
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_ratfun(), b in arb_ratfun(), x in -20i64..=20) {
            let x = br(x, 1);
            let (ea, eb) = (a.eval(&x), b.eval(&x));
            if let (Ok(ea), Ok(eb)) = (ea, eb) {
                if let Ok(sum) = a.add(&b).eval(&x) {
                    prop_assert_eq!(sum, &ea + &eb);
                }
                if let Ok(prod) = a.mul(&b).eval(&x) {
                    prop_assert_eq!(prod, &ea * &eb);
                }
            }
        }
    }
}
