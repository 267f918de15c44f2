use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial with integer coefficients.
///
/// Coefficients are stored in ascending order of power with no trailing
/// zeros; the zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

fn trim(mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        IntPoly { coeffs: trim(coeffs) }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly::new(vec![c.into()])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn x() -> Self {
        IntPoly::monomial(1, 1)
    }

    /// Convenience constructor from coefficients in descending order,
    /// matching the way polynomials are written out: `desc(&[2, 4, 4])` is
    /// `2x^2 + 4x + 4`.
    pub fn desc(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k` (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        IntPoly::new(coeffs)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        IntPoly::new(coeffs)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly { coeffs }
    }

    pub fn mul_scalar(&self, k: &BigInt) -> IntPoly {
        if k.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Substitutes `x <- a*x + b` (exact).
    pub fn compose_linear(&self, a: &BigInt, b: &BigInt) -> IntPoly {
        let inner = IntPoly::new(vec![b.clone(), a.clone()]);
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&inner).add(&IntPoly::constant(c.clone()));
        }
        acc
    }

    /// Substitutes `x <- x + k`.
    pub fn shift(&self, k: impl Into<BigInt>) -> IntPoly {
        self.compose_linear(&BigInt::one(), &k.into())
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    /// Gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// The polynomial divided by its content (sign of coefficients kept).
    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Exact division: `Some(q)` with `self = q * d` over the integers, else
    /// `None`.
    pub fn exact_div(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dd = d.degree().unwrap();
        let lead = d.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len()];
        while !rem.is_zero() {
            let rd = rem.degree().unwrap();
            if rd < dd {
                return None;
            }
            let (c, r) = rem.leading().unwrap().div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            q[rd - dd] = c.clone();
            rem = rem.sub(&d.mul(&IntPoly::monomial(c, rd - dd)));
        }
        Some(IntPoly::new(q))
    }

    /// Pseudo-remainder of `self` by `d`: the remainder after scaling each
    /// elimination step by the divisor's leading coefficient, staying in
    /// integer arithmetic. Used by [`IntPoly::gcd`].
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo_rem by zero");
        let lead = d.leading().unwrap();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading().unwrap().clone();
            rem = rem
                .mul_scalar(lead)
                .sub(&d.mul(&IntPoly::monomial(c, rd - dd)));
        }
        rem
    }

    /// Primitive positive-leading-coefficient gcd (the gcd in `Q[x]`,
    /// normalized). Integer content of the inputs is discarded:
    /// `gcd(2x+2, 4x+4) = x+1`.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        if a.leading().is_some_and(|c| c.is_negative()) {
            a = a.neg();
        }
        a
    }

    /// Renders with `var` as the variable, descending powers, no spaces:
    /// `2p^3+6p^2+16p+12`.
    pub fn render(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push(if c.is_negative() { '-' } else { '+' });
            }
            let mag = c.abs();
            if k == 0 {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                }
                out.push(var);
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
        out
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render('p'))
    }
}

impl From<&IntPoly> for RatPoly {
    fn from(p: &IntPoly) -> Self {
        RatPoly::new(
            p.coeffs
                .iter()
                .map(|c| BigRational::from(c.clone()))
                .collect(),
        )
    }
}

/// A polynomial with rational coefficients, ascending storage, no trailing
/// zeros. Used where division leaves the integers: long division, the raw
/// (unreduced) sthaulya families, and interpolation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

fn trim_rat(mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
}

impl RatPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        RatPoly { coeffs: trim_rat(coeffs) }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> Self {
        RatPoly::new(vec![c])
    }

    pub fn x() -> Self {
        RatPoly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPoly { coeffs }
    }

    pub fn mul_scalar(&self, k: &BigRational) -> RatPoly {
        if k.is_zero() {
            return RatPoly::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Long division: `self = q * d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.degree().unwrap();
        let lead = d.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut q = vec![BigRational::zero(); self.coeffs.len()];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading().unwrap() / &lead;
            let mono = RatPoly::new(
                (0..=rd - dd)
                    .map(|i| {
                        if i == rd - dd {
                            c.clone()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect(),
            );
            rem = rem.sub(&d.mul(&mono));
            q[rd - dd] = c;
        }
        Ok((RatPoly::new(q), rem))
    }

    /// Substitutes `x <- a*x + b` (exact).
    pub fn compose_linear(&self, a: &BigRational, b: &BigRational) -> RatPoly {
        let inner = RatPoly::new(vec![b.clone(), a.clone()]);
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&inner).add(&RatPoly::constant(c.clone()));
        }
        acc
    }

    /// Multiplies out all coefficient denominators: returns the integer
    /// polynomial `self * m` together with the multiplier `m` (the lcm of the
    /// denominators, positive). Zero maps to `(0, 1)`.
    pub fn clear_denominators(&self) -> (IntPoly, BigInt) {
        let m = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&m / c.denom()))
            .collect();
        (IntPoly::new(coeffs), m)
    }

    /// Unique interpolating polynomial of degree < points.len() through the
    /// given (x, y) pairs. The x values must be pairwise distinct.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Result<RatPoly> {
        let mut acc = RatPoly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = RatPoly::constant(BigRational::one());
            let mut denom = BigRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let diff = xi - xj;
                if diff.is_zero() {
                    return Err(Error::domain("interpolation nodes must be distinct"));
                }
                basis = basis.mul(&RatPoly::new(vec![-xj, BigRational::one()]));
                denom *= diff;
            }
            acc = acc.add(&basis.mul_scalar(&(yi / denom)));
        }
        Ok(acc)
    }
}
