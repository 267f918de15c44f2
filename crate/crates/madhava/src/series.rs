//! Partial sums of the Madhava-Leibniz series, its corrected variants, and
//! the transformed fast-converging series, all in exact arithmetic with
//! explicit rounding bounds.
//!
//! Every series here estimates pi after normalization. The slow base series
//! sums to pi/4; the transformed ones (ids `eq38` through `eq42b` and
//! `putumana`) come from the correction closed forms and converge like
//! `n^-3`, `n^-5`, or `n^-7`; `sqrt12` is the square-root flavored series
//! `sqrt(12) * (1 - 1/(3*3) + 1/(5*3^2) - ...)`.
//!
//! Evaluation accumulates terms as fixed-point decimals at a widened working
//! scale, rounding each term once (half-even) and counting the roundings, so
//! the reported bound `roundings/2` ulp is a hard bound on accumulated error.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::correction::{convergent, CorrectionTerm};
use crate::error::{Error, Result};
use crate::exactnum::{fixed_sqrt, pow10, rat_to_fixed, FixedDecimal, Rounding};
use crate::polyalg::{IntPoly, RatFun};

/// Identifies one of the series the crate can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesId {
    /// pi/4 = 1 - 1/3 + 1/5 - ...
    Leibniz,
    /// The same partial sums with the order-k end correction applied.
    LeibnizCorrected(u32),
    /// Cubic-rate transform: 3/4 + sum of (-1)^j / ((2j-1)^3 - (2j-1)).
    Eq38,
    /// Quintic-rate transform with denominators p^5 + 4p.
    Eq39,
    /// Seventh-order transform with denominators (p^3-p)(p^4+8p^2+36).
    Eq40,
    /// Transform of the order-1 correction with even denominators.
    Eq41,
    /// pi/8 = 1/(1*3) + 1/(5*7) + 1/(9*11) + ...
    Eq42a,
    /// pi/8 = 1/2 - 1/(3*5) - 1/(7*9) - ...
    Eq42b,
    /// Putumana's cubic-rate series 3/4 + sum of (3/2)/((2m^2-1)^2 - m^2),
    /// m = 2j.
    Putumana,
    /// sqrt(12) times the alternating base-3 series.
    Sqrt12,
}

impl std::fmt::Display for SeriesId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeriesId::Leibniz => write!(f, "leibniz"),
            SeriesId::LeibnizCorrected(k) => write!(f, "leibniz_corrected({k})"),
            SeriesId::Eq38 => write!(f, "eq38"),
            SeriesId::Eq39 => write!(f, "eq39"),
            SeriesId::Eq40 => write!(f, "eq40"),
            SeriesId::Eq41 => write!(f, "eq41"),
            SeriesId::Eq42a => write!(f, "eq42a"),
            SeriesId::Eq42b => write!(f, "eq42b"),
            SeriesId::Putumana => write!(f, "putumana"),
            SeriesId::Sqrt12 => write!(f, "sqrt12"),
        }
    }
}

impl FromStr for SeriesId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "leibniz" => SeriesId::Leibniz,
            "eq38" => SeriesId::Eq38,
            "eq39" => SeriesId::Eq39,
            "eq40" => SeriesId::Eq40,
            "eq41" => SeriesId::Eq41,
            "eq42a" => SeriesId::Eq42a,
            "eq42b" => SeriesId::Eq42b,
            "putumana" => SeriesId::Putumana,
            "sqrt12" => SeriesId::Sqrt12,
            other => {
                if let Some(k) = other
                    .strip_prefix("leibniz_corrected(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|k| k.parse::<u32>().ok())
                {
                    SeriesId::LeibnizCorrected(k)
                } else {
                    return Err(Error::domain(format!("unknown series id: {other}")));
                }
            }
        })
    }
}

/// A validated evaluation request: which series, how many terms, and the
/// output scale (fractional digits).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesSpec {
    pub id: SeriesId,
    pub term_count: u64,
    pub scale: u32,
}

impl SeriesSpec {
    pub fn new(id: SeriesId, term_count: u64, scale: u32) -> Result<Self> {
        if term_count == 0 {
            return Err(Error::domain("term count must be at least 1"));
        }
        if let SeriesId::LeibnizCorrected(k) = id {
            if !(1..=5).contains(&k) {
                return Err(Error::domain(format!(
                    "corrected series carries an order in 1..=5, got {k}"
                )));
            }
        }
        Ok(SeriesSpec { id, term_count, scale })
    }
}

/// Factor that turns the series' natural unit into pi (4, 8, or 1).
pub fn multiplier(id: SeriesId) -> u32 {
    match id {
        SeriesId::Eq42a | SeriesId::Eq42b => 8,
        SeriesId::Sqrt12 => 1,
        _ => 4,
    }
}

/// Constant added before the terms (only Putumana's series has one).
pub fn prefix(id: SeriesId) -> BigRational {
    match id {
        SeriesId::Putumana => BigRational::new(BigInt::from(3), BigInt::from(4)),
        _ => BigRational::zero(),
    }
}

fn signed(positive: bool, num: BigInt, den: BigInt) -> BigRational {
    let num = if positive { num } else { -num };
    BigRational::new(num, den)
}

/// Exact `j`-th term of the series (1-based). For the corrected series this
/// is the base Leibniz term; the correction enters once, at the end of a
/// partial sum. `sqrt12` has no rational term sequence and errors here.
pub fn term(id: SeriesId, j: u64) -> Result<BigRational> {
    if j == 0 {
        return Err(Error::domain("terms are indexed from 1"));
    }
    let p = || BigInt::from(2 * j - 1);
    let one = BigInt::one;
    Ok(match id {
        SeriesId::Leibniz | SeriesId::LeibnizCorrected(_) => {
            signed(j % 2 == 1, one(), p())
        }
        SeriesId::Eq38 => {
            if j == 1 {
                BigRational::new(BigInt::from(3), BigInt::from(4))
            } else {
                let p = p();
                let den = &p * &p * &p - &p;
                signed(j.is_multiple_of(2), one(), den)
            }
        }
        SeriesId::Eq39 => {
            let p = p();
            let den = p.pow(5) + 4 * &p;
            signed(j % 2 == 1, BigInt::from(4), den)
        }
        SeriesId::Eq40 => {
            if j == 1 {
                BigRational::new(BigInt::from(7), BigInt::from(9))
            } else {
                let p = p();
                let cubic = &p * &p * &p - &p;
                let p2 = &p * &p;
                let quartic = (&p2 + 4) * (&p2 + 4) + 20;
                signed(j.is_multiple_of(2), BigInt::from(36), cubic * quartic)
            }
        }
        SeriesId::Eq41 => {
            if j == 1 {
                BigRational::new(one(), BigInt::from(2))
            } else {
                let b = BigInt::from(2 * j - 2);
                signed(j.is_multiple_of(2), one(), &b * &b - 1)
            }
        }
        SeriesId::Eq42a => {
            let b = BigInt::from(4 * j - 2);
            BigRational::new(one(), &b * &b - 1)
        }
        SeriesId::Eq42b => {
            if j == 1 {
                BigRational::new(one(), BigInt::from(2))
            } else {
                let b = BigInt::from(4 * j - 4);
                signed(false, one(), &b * &b - 1)
            }
        }
        SeriesId::Putumana => {
            let m = BigInt::from(2 * j);
            let m2 = &m * &m;
            let core = 2 * &m2 - 1;
            let den = &core * &core - &m2;
            BigRational::new(BigInt::from(3), 2 * den)
        }
        SeriesId::Sqrt12 => {
            return Err(Error::UnsupportedTerm(
                "sqrt12 terms are irrational multiples of sqrt(12)",
            ))
        }
    })
}

/// Signed order-`k` correction after `n` terms: `(-1)^n f_k(2n-1)`.
fn signed_correction(corr: &CorrectionTerm, n: u64) -> Result<BigRational> {
    let f = corr
        .n_form
        .eval(&BigRational::from(BigInt::from(n)))?;
    Ok(if n.is_multiple_of(2) { f } else { -f })
}

/// Exact rational partial sum (prefix + terms + correction where applicable)
/// in the series' natural unit. Errors for `sqrt12`, whose partial sums are
/// irrational.
pub fn exact_partial(id: SeriesId, n: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::domain("term count must be at least 1"));
    }
    let mut acc = prefix(id);
    for j in 1..=n {
        acc += term(id, j)?;
    }
    if let SeriesId::LeibnizCorrected(k) = id {
        acc += signed_correction(&convergent(k)?, n)?;
    }
    Ok(acc)
}

/// Result of a fixed-point series evaluation.
///
/// `unit_sum` is the accumulated sum in the series' own unit at the working
/// scale, and `rounding_bound` (same scale) bounds `|unit_sum - exact|` from
/// the counted per-term roundings. `value` is the pi estimate: `unit_sum`
/// times `multiplier`, rescaled to the requested scale, which adds at most
/// half an output ulp on top of `multiplier * rounding_bound`.
#[derive(Debug, Clone)]
pub struct EvalResult {
    pub spec: SeriesSpec,
    /// Estimate of pi at `spec.scale`.
    pub value: FixedDecimal,
    /// Accumulated sum in series units at `working_scale`.
    pub unit_sum: FixedDecimal,
    pub working_scale: u32,
    /// Bound on `|unit_sum - exact partial sum|`, at `working_scale`.
    pub rounding_bound: FixedDecimal,
    pub multiplier: u32,
    /// `value - reference_pi(spec.scale)`, filled by [`evaluate`].
    pub error_vs_reference: Option<FixedDecimal>,
}

fn decimal_digits(n: u64) -> u32 {
    n.to_string().len() as u32
}

/// Smallest `g` with `10^g >= n`, for positive `n`.
fn ceil_log10(n: u64) -> u32 {
    debug_assert!(n >= 1);
    let digits = n.to_string().len() as u32;
    if n == 10u64.pow(digits - 1) {
        digits - 1
    } else {
        digits
    }
}

/// Working scale for a request: the output scale plus a guard of
/// `ceil(log10(term_count)) + 5` digits, so the per-term half-ulp roundings
/// stay well below one output ulp.
pub fn working_scale(spec: &SeriesSpec) -> u32 {
    spec.scale + ceil_log10(spec.term_count) + 5
}

/// Evaluates the partial sum at the working scale with one half-even
/// rounding per term, exact accumulation, and a counted rounding bound.
pub fn partial_sum(spec: &SeriesSpec) -> Result<EvalResult> {
    let w = working_scale(spec);
    let mult = multiplier(spec.id);

    if spec.id == SeriesId::Sqrt12 {
        // exact rational sum, then one multiplication by a truncated sqrt(12)
        let mut s = BigRational::zero();
        let mut power = BigInt::one();
        for j in 0..spec.term_count {
            let den = BigInt::from(2 * j + 1) * &power;
            let t = signed(j % 2 == 0, BigInt::one(), den);
            s += t;
            power *= 3;
        }
        let r12 = fixed_sqrt(&BigInt::from(12), w + 2)?;
        let unit_sum = rat_to_fixed(&(&s * r12.to_rational()), w, Rounding::HalfEven);
        // sqrt truncation contributes under 0.01 ulp (s <= 1), the final
        // rounding one half ulp; one full ulp covers both
        let rounding_bound = FixedDecimal::new(BigInt::one(), w);
        let value = unit_sum.rescale(spec.scale, Rounding::HalfEven);
        return Ok(EvalResult {
            spec: spec.clone(),
            value,
            unit_sum,
            working_scale: w,
            rounding_bound,
            multiplier: mult,
            error_vs_reference: None,
        });
    }

    let mut acc = FixedDecimal::zero(w);
    let mut roundings: u64 = 0;
    let pre = prefix(spec.id);
    if !pre.is_zero() {
        acc = acc.add(&rat_to_fixed(&pre, w, Rounding::HalfEven));
        roundings += 1;
    }
    for j in 1..=spec.term_count {
        acc = acc.add(&rat_to_fixed(&term(spec.id, j)?, w, Rounding::HalfEven));
        roundings += 1;
    }
    if let SeriesId::LeibnizCorrected(k) = spec.id {
        let corr = signed_correction(&convergent(k)?, spec.term_count)?;
        acc = acc.add(&rat_to_fixed(&corr, w, Rounding::HalfEven));
        roundings += 1;
    }
    let value = acc.mul_int(mult).rescale(spec.scale, Rounding::HalfEven);
    let rounding_bound = FixedDecimal::new(BigInt::from(roundings.div_ceil(2)), w);
    Ok(EvalResult {
        spec: spec.clone(),
        value,
        unit_sum: acc,
        working_scale: w,
        rounding_bound,
        multiplier: mult,
        error_vs_reference: None,
    })
}

/// [`partial_sum`] plus the signed error against [`reference_pi`] at the
/// output scale.
pub fn evaluate(spec: &SeriesSpec) -> Result<EvalResult> {
    let mut result = partial_sum(spec)?;
    let reference = reference_pi(spec.scale);
    result.error_vs_reference = Some(result.value.sub(&reference));
    Ok(result)
}

/// Reference value of pi with absolute error below `0.52 * 10^(-scale)`,
/// from the sqrt12 series: enough exact rational terms that the tail drops
/// under `10^(-scale-2)`, times sqrt(12) truncated at `scale + 4`, rounded
/// half-even once.
pub fn reference_pi(scale: u32) -> FixedDecimal {
    // smallest m with sqrt(12)/((2m+1) 3^m) < 10^(-scale-2), checked in
    // integers: (2m+1)^2 3^(2m) > 12 * 10^(2(scale+2))
    let target = BigInt::from(12) * pow10(2 * (scale + 2));
    let mut m: u64 = 1;
    let mut power = BigInt::from(9); // 3^(2m)
    loop {
        let odd = BigInt::from(2 * m + 1);
        if &odd * &odd * &power > target {
            break;
        }
        m += 1;
        power *= 9;
    }
    let mut s = BigRational::zero();
    let mut pow3 = BigInt::one();
    for j in 0..m {
        s += signed(j % 2 == 0, BigInt::one(), BigInt::from(2 * j + 1) * &pow3);
        pow3 *= 3;
    }
    let r12 = fixed_sqrt(&BigInt::from(12), scale + 4).expect("12 is nonnegative");
    rat_to_fixed(&(&s * r12.to_rational()), scale, Rounding::HalfEven)
}

/// One row of the error table: `pi - 4*(partial sum)` without and with the
/// order 1..3 corrections, at scale `requested + 6`.
#[derive(Debug, Clone)]
pub struct ErrorRow {
    pub n: u64,
    pub e: FixedDecimal,
    pub e1: FixedDecimal,
    pub e2: FixedDecimal,
    pub e3: FixedDecimal,
}

/// Error table for the given term counts (any order, deduplicated; rows come
/// back sorted by `n`). Entries are computed at an internal accumulation
/// scale wide enough that each reported digit is trustworthy, then rescaled
/// to `scale + 6`.
pub fn error_table(ns: &[u64], scale: u32) -> Result<Vec<ErrorRow>> {
    if ns.contains(&0) {
        return Err(Error::domain("term counts must be at least 1"));
    }
    let mut ns: Vec<u64> = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let Some(&max_n) = ns.last() else {
        return Ok(vec![]);
    };
    let w = scale + 6;
    let wa = w + decimal_digits(max_n) + 5;
    let pi = reference_pi(wa);
    let corrections: Vec<CorrectionTerm> =
        (1..=3).map(convergent).collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(ns.len());
    let mut acc = FixedDecimal::zero(wa);
    let mut next = 1u64;
    for &n in &ns {
        while next <= n {
            acc = acc.add(&rat_to_fixed(
                &term(SeriesId::Leibniz, next)?,
                wa,
                Rounding::HalfEven,
            ));
            next += 1;
        }
        let entry = |sum: &FixedDecimal| pi.sub(&sum.mul_int(4)).rescale(w, Rounding::HalfEven);
        let e = entry(&acc);
        let mut corrected = corrections.iter().map(|c| {
            let f = rat_to_fixed(&signed_correction(c, n)?, wa, Rounding::HalfEven);
            Ok(entry(&acc.add(&f)))
        });
        let e1 = corrected.next().unwrap()?;
        let e2 = corrected.next().unwrap()?;
        let e3 = corrected.next().unwrap()?;
        rows.push(ErrorRow { n, e, e1, e2, e3 });
    }
    Ok(rows)
}

/// Decimal log of the magnitude of a fixed-point value, good to well past
/// three decimal places (leading digits through `f64`); `None` for zero.
pub fn log10_magnitude(x: &FixedDecimal) -> Option<f64> {
    if x.is_zero() {
        return None;
    }
    let digits = x.mantissa().abs().to_string();
    let lead_len = digits.len().min(15);
    let lead: f64 = digits[..lead_len].parse().expect("digit string");
    Some(lead.log10() + (digits.len() - lead_len) as f64 - x.scale() as f64)
}

/// Convergence-plot data: `log10 |pi - estimate|` for the base series and
/// the three corrected ones, at term counts `2, 2+step, ... <= n_max`
/// (`floor((n_max-2)/step) + 1` rows). Errors are measured against
/// [`reference_pi`] at scale 40; an error too small to register there
/// reports the resolution floor of -40.
#[derive(Debug, Clone)]
pub struct Fig1Row {
    pub n: u64,
    /// log10 of |e|, |e1|, |e2|, |e3|.
    pub log_abs: [f64; 4],
}

pub fn fig1_data(n_max: u64, step: u64) -> Result<Vec<Fig1Row>> {
    if n_max < 2 || step == 0 {
        return Err(Error::domain("the plot needs n_max >= 2 and step >= 1"));
    }
    let ns: Vec<u64> = (2..=n_max).step_by(step as usize).collect();
    let rows = error_table(&ns, 34)?;
    Ok(rows
        .into_iter()
        .map(|row| {
            let log = |e: &FixedDecimal| log10_magnitude(e).unwrap_or(-40.0);
            Fig1Row {
                n: row.n,
                log_abs: [log(&row.e), log(&row.e1), log(&row.e2), log(&row.e3)],
            }
        })
        .collect())
}

/// The pairwise regrouping that turns the cubic-rate series into Putumana's:
/// symbolically in `j`,
/// `1/((4j-1)^3 - (4j-1)) - 1/((4j+1)^3 - (4j+1)) = (3/2)/((2(2j)^2-1)^2 - (2j)^2)`.
#[derive(Debug, Clone)]
pub struct PutumanaIdentity {
    pub lhs: RatFun,
    pub rhs: RatFun,
    pub holds: bool,
}

pub fn putumana_identity() -> PutumanaIdentity {
    let cubic = IntPoly::desc(&[1, 0, -1, 0]); // x^3 - x
    let four = BigInt::from(4);
    let at = |b: i64| {
        RatFun::new(
            IntPoly::one(),
            cubic.compose_linear(&four, &BigInt::from(b)),
        )
        .expect("denominator is a nonzero polynomial")
    };
    let lhs = at(-1).sub(&at(1));
    // (2(2j)^2 - 1)^2 - (2j)^2 = 64j^4 - 20j^2 + 1
    let rhs = RatFun::new(
        IntPoly::constant(3),
        IntPoly::desc(&[128, 0, -40, 0, 2]),
    )
    .expect("constant denominator");
    let holds = lhs == rhs;
    PutumanaIdentity { lhs, rhs, holds }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sthaulya::sthaulya_of;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn spec(id: SeriesId, terms: u64, scale: u32) -> SeriesSpec {
        SeriesSpec::new(id, terms, scale).unwrap()
    }

    #[test]
    fn term_values_match_hand_computation() {
        assert_eq!(term(SeriesId::Leibniz, 1).unwrap(), q(1, 1));
        assert_eq!(term(SeriesId::Leibniz, 2).unwrap(), q(-1, 3));
        assert_eq!(term(SeriesId::Eq38, 1).unwrap(), q(3, 4));
        assert_eq!(term(SeriesId::Eq38, 2).unwrap(), q(1, 24));
        assert_eq!(term(SeriesId::Eq38, 3).unwrap(), q(-1, 120));
        assert_eq!(term(SeriesId::Eq39, 1).unwrap(), q(4, 5));
        assert_eq!(term(SeriesId::Eq39, 2).unwrap(), q(-4, 255));
        assert_eq!(term(SeriesId::Eq40, 1).unwrap(), q(7, 9));
        assert_eq!(term(SeriesId::Eq40, 2).unwrap(), q(1, 126));
        assert_eq!(term(SeriesId::Eq41, 1).unwrap(), q(1, 2));
        assert_eq!(term(SeriesId::Eq41, 2).unwrap(), q(1, 3));
        assert_eq!(term(SeriesId::Eq41, 3).unwrap(), q(-1, 15));
        assert_eq!(term(SeriesId::Eq42a, 1).unwrap(), q(1, 3));
        assert_eq!(term(SeriesId::Eq42a, 2).unwrap(), q(1, 35));
        assert_eq!(term(SeriesId::Eq42b, 1).unwrap(), q(1, 2));
        assert_eq!(term(SeriesId::Eq42b, 2).unwrap(), q(-1, 15));
        assert_eq!(term(SeriesId::Putumana, 1).unwrap(), q(1, 30));
        assert_eq!(term(SeriesId::Putumana, 2).unwrap(), q(1, 630));
        assert!(term(SeriesId::Sqrt12, 1).is_err());
        assert!(term(SeriesId::Leibniz, 0).is_err());
    }

    #[test]
    fn ids_round_trip_through_strings() {
        let ids = [
            SeriesId::Leibniz,
            SeriesId::LeibnizCorrected(3),
            SeriesId::Eq38,
            SeriesId::Eq39,
            SeriesId::Eq40,
            SeriesId::Eq41,
            SeriesId::Eq42a,
            SeriesId::Eq42b,
            SeriesId::Putumana,
            SeriesId::Sqrt12,
        ];
        for id in ids {
            assert_eq!(id.to_string().parse::<SeriesId>().unwrap(), id);
        }
        assert!("eq37".parse::<SeriesId>().is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(SeriesSpec::new(SeriesId::Leibniz, 0, 10).is_err());
        assert!(SeriesSpec::new(SeriesId::LeibnizCorrected(0), 5, 10).is_err());
        assert!(SeriesSpec::new(SeriesId::LeibnizCorrected(6), 5, 10).is_err());
        assert!(SeriesSpec::new(SeriesId::LeibnizCorrected(5), 5, 10).is_ok());
    }

    #[test]
    fn transformed_series_equal_corrected_partial_sums() {
        for n in 1..=60 {
            assert_eq!(
                exact_partial(SeriesId::Eq38, n).unwrap(),
                exact_partial(SeriesId::LeibnizCorrected(1), n).unwrap(),
                "cubic transform at n={n}"
            );
            assert_eq!(
                exact_partial(SeriesId::Eq39, n).unwrap(),
                exact_partial(SeriesId::LeibnizCorrected(2), n).unwrap(),
                "quintic transform at n={n}"
            );
            assert_eq!(
                exact_partial(SeriesId::Eq40, n).unwrap(),
                exact_partial(SeriesId::LeibnizCorrected(3), n).unwrap(),
                "seventh-order transform at n={n}"
            );
        }
    }

    #[test]
    fn even_denominator_series_matches_the_simple_correction() {
        // eq41 is the transform of f = 1/(2p)
        for n in 1..=60u64 {
            let p = BigInt::from(2 * n - 1);
            let f = BigRational::new(BigInt::one(), 2 * p);
            let corrected = exact_partial(SeriesId::Leibniz, n).unwrap()
                + if n % 2 == 0 { f } else { -f };
            assert_eq!(exact_partial(SeriesId::Eq41, n).unwrap(), corrected);
        }
    }

    #[test]
    fn split_identities_between_the_pi_over_8_series() {
        for m in 1..=50 {
            // eq42a after m terms is half the 2m-term Leibniz sum
            assert_eq!(
                exact_partial(SeriesId::Eq42a, m).unwrap(),
                exact_partial(SeriesId::Leibniz, 2 * m).unwrap() / BigInt::from(2)
            );
            // and the two pi/8 series recombine into eq41
            assert_eq!(
                exact_partial(SeriesId::Eq41, 2 * m + 1).unwrap(),
                exact_partial(SeriesId::Eq42a, m).unwrap()
                    + exact_partial(SeriesId::Eq42b, m + 1).unwrap()
            );
        }
    }

    #[test]
    fn putumana_groups_the_cubic_series_pairwise() {
        for n in 1..=40 {
            assert_eq!(
                exact_partial(SeriesId::Putumana, n).unwrap(),
                exact_partial(SeriesId::Eq38, 2 * n + 1).unwrap()
            );
        }
        let id = putumana_identity();
        assert!(id.holds);
        assert_eq!(id.lhs, id.rhs);
        assert_eq!(id.rhs.render('j'), "3/(128j^4-40j^2+2)");
    }

    #[test]
    fn corrected_sums_telescope_through_the_sthaulya() {
        for k in 1..=3u32 {
            let i_k = sthaulya_of(k).unwrap().expr;
            for n in 2..=40u64 {
                let step = exact_partial(SeriesId::LeibnizCorrected(k), n).unwrap()
                    - exact_partial(SeriesId::LeibnizCorrected(k), n - 1).unwrap();
                let i_val = i_k
                    .eval(&BigRational::from(BigInt::from(2 * n - 1)))
                    .unwrap();
                let expected = if n % 2 == 0 { i_val } else { -i_val };
                assert_eq!(step, expected, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn corrected_estimate_matches_known_digits() {
        let r = partial_sum(&spec(SeriesId::LeibnizCorrected(3), 5, 15)).unwrap();
        assert_eq!(r.value.to_string(), "3.141587301587302");
        assert_eq!(r.multiplier, 4);
        // the pi estimate is exactly 4948/1575; exact_partial works in
        // series units, a quarter of that
        assert_eq!(
            exact_partial(SeriesId::LeibnizCorrected(3), 5).unwrap(),
            q(4948, 4 * 1575)
        );
    }

    #[test]
    fn transformed_series_sample_values() {
        let r = partial_sum(&spec(SeriesId::Eq39, 3, 10)).unwrap();
        assert_eq!(r.value.to_string(), "3.1423423423");
        let r = partial_sum(&spec(SeriesId::Putumana, 1, 6)).unwrap();
        assert_eq!(r.value.to_string(), "3.133333");
        let r = partial_sum(&spec(SeriesId::Eq42a, 1, 6)).unwrap();
        assert_eq!(r.value.to_string(), "2.666667"); // 8/3
    }

    #[test]
    fn rounding_bound_is_sound_and_small() {
        let ids = [
            SeriesId::Leibniz,
            SeriesId::LeibnizCorrected(2),
            SeriesId::Eq38,
            SeriesId::Eq40,
            SeriesId::Eq42b,
            SeriesId::Putumana,
        ];
        for id in ids {
            for terms in [1u64, 2, 7, 50] {
                let s = spec(id, terms, 12);
                let r = partial_sum(&s).unwrap();
                // bound within the documented ceiling
                assert!(
                    r.rounding_bound.to_rational()
                        <= BigRational::new(BigInt::from(terms), pow10(r.working_scale)),
                    "{id} terms={terms}"
                );
                // soundness against the fully exact rational sum
                let exact = exact_partial(id, terms).unwrap();
                let drift = (r.unit_sum.to_rational() - &exact).abs();
                assert!(drift <= r.rounding_bound.to_rational(), "{id} terms={terms}");
                let value_drift = (r.value.to_rational()
                    - exact * BigInt::from(r.multiplier))
                .abs();
                let half_out = BigRational::new(BigInt::one(), pow10(s.scale) * 2);
                let allowed = r.rounding_bound.to_rational() * BigInt::from(r.multiplier)
                    + half_out;
                assert!(value_drift <= allowed, "{id} terms={terms}");
            }
        }
    }

    #[test]
    fn reference_pi_has_the_advertised_accuracy() {
        assert_eq!(reference_pi(15).to_string(), "3.141592653589793");
        assert_eq!(reference_pi(1).to_string(), "3.1");
        assert_eq!(reference_pi(0).to_string(), "3");
        let thirty = reference_pi(30).to_string();
        assert!(
            thirty == "3.141592653589793238462643383279"
                || thirty == "3.141592653589793238462643383280",
            "got {thirty}"
        );
        // against 40 recorded digits
        let pi40 = FixedDecimal::new(
            "31415926535897932384626433832795028841971"
                .parse::<BigInt>()
                .unwrap(),
            40,
        );
        for scale in [5u32, 12, 25, 33] {
            let err = (reference_pi(scale).to_rational() - pi40.to_rational()).abs();
            let cap = BigRational::new(BigInt::from(53), pow10(scale) * BigInt::from(100));
            assert!(err < cap, "scale {scale}");
        }
    }

    #[test]
    fn sqrt12_converges_at_the_documented_rate() {
        let r = partial_sum(&spec(SeriesId::Sqrt12, 20, 20)).unwrap();
        let reference = reference_pi(20);
        let err = r.value.sub(&reference).to_rational().abs();
        // the 20-term error sits just under 1.84e-11
        let lo = BigRational::new(BigInt::from(183), pow10(13));
        let hi = BigRational::new(BigInt::from(185), pow10(13));
        assert!(err > lo && err < hi, "error {err}");
        assert_eq!(r.multiplier, 1);
    }

    #[test]
    fn evaluate_fills_the_reference_error() {
        let r = evaluate(&spec(SeriesId::Leibniz, 10, 10)).unwrap();
        let err = r.error_vs_reference.unwrap();
        // pi - 4 L_10 is about +0.0997530, so value - pi is negative
        assert!(err.mantissa().is_negative());
        let approx = err.to_scientific(8);
        assert_eq!(approx, "-9.9753035e-2");
    }

    #[test]
    fn error_table_matches_exact_oracle_values() {
        let rows = error_table(&[11, 10], 10).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].n, 10);
        assert_eq!(rows[0].e.to_scientific(8), "+9.9753035e-2");
        assert_eq!(rows[0].e1.to_scientific(8), "-2.4696534e-4");
        assert_eq!(rows[0].e2.to_scientific(8), "+2.4112190e-6");
        assert_eq!(rows[0].e3.to_scientific(8), "-5.1759362e-8");
        assert_eq!(rows[1].n, 11);
        assert_eq!(rows[1].e.to_scientific(8), "-9.0723156e-2");
        assert_eq!(rows[1].e1.to_scientific(8), "+1.8593509e-4");
        assert_eq!(rows[1].e2.to_scientific(8), "-1.5063313e-6");
        assert_eq!(rows[1].e3.to_scientific(8), "+2.6931923e-8");
        assert!(error_table(&[0], 10).is_err());
        assert!(error_table(&[], 10).unwrap().is_empty());
    }

    #[test]
    fn fig1_rows_carry_plausible_slopes() {
        let rows = fig1_data(10, 1).unwrap();
        assert_eq!(rows.len(), 9); // n = 2..=10
        let last = &rows[8];
        assert_eq!(last.n, 10);
        // oracle: -1.001074, -3.607364, -5.617763, -7.286011
        let expected = [-1.001074, -3.607364, -5.617763, -7.286011];
        for (got, want) in last.log_abs.iter().zip(expected) {
            assert!((got - want).abs() < 1e-3, "got {got}, want {want}");
        }
        // row count is floor((n_max-2)/step) + 1
        assert_eq!(fig1_data(10, 4).unwrap().len(), 3);
        assert!(fig1_data(1, 1).is_err());
        assert!(fig1_data(10, 0).is_err());
    }

    #[test]
    fn leibniz_partial_sums_bracket_the_quarter_target() {
        // reference_pi(30) sits within 0.52e-30 of the true value; partial
        // sum gaps at n <= 40 are orders of magnitude larger, so comparing
        // against it decides the bracketing exactly
        let quarter = reference_pi(30).to_rational() / BigInt::from(4);
        let mut prev = exact_partial(SeriesId::Leibniz, 1).unwrap();
        for n in 2..=40u64 {
            let cur = exact_partial(SeriesId::Leibniz, n).unwrap();
            let (lo, hi) = if n % 2 == 0 { (&cur, &prev) } else { (&prev, &cur) };
            assert!(lo < &quarter && &quarter < hi, "n={n}");
            prev = cur;
        }
    }
}
