//! Reconstruction of correction terms hidden in historical values of pi.
//!
//! Given an assumed exact value for pi (say 355/113), the gap between pi/4
//! and the n-term Leibniz partial sum, `S(n) = |pi/4 - L_n|`, can be peeled
//! like a continued fraction: write `1/S(n)` as an integer quotient plus a
//! remainder in [0, 1), recurse on the remainder. If the quotients at each
//! level follow an integer-linear pattern in `n`, the nested fraction built
//! from those patterns is a candidate correction term, and for the recorded
//! historical values it reproduces the known corrections exactly. The module
//! fits those patterns, flags the points that break them, and builds the
//! implied corrections; [`mediant`] covers the other historical route to the
//! third correction.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyalg::{IntPoly, RatFun};
use crate::series::{exact_partial, SeriesId};

/// One peeling step: `1/q = quotient + remainder`, `0 <= remainder < 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelLayer {
    pub quotient: BigInt,
    pub remainder: BigRational,
}

/// Peels the outermost layer off a value in the open interval (0, 1).
pub fn peel(q: &BigRational) -> Result<PeelLayer> {
    if !q.is_positive() || *q >= BigRational::one() {
        return Err(Error::domain(format!(
            "peeling needs a value strictly between 0 and 1, got {q}"
        )));
    }
    let inv = q.recip();
    let quotient = inv.numer().div_floor(inv.denom());
    let remainder = &inv - BigRational::from(quotient.clone());
    Ok(PeelLayer { quotient, remainder })
}

/// `S(n) = |pi_assumed/4 - L_n|` with the n-term Leibniz partial sum `L_n`,
/// all exact.
pub fn s_of_n(pi_assumed: &BigRational, n: u64) -> Result<BigRational> {
    let quarter = pi_assumed / BigInt::from(4);
    Ok((quarter - exact_partial(SeriesId::Leibniz, n)?).abs())
}

/// An integer-linear quotient pattern `a*n + b`, or the absence of one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternFit {
    Line { a: BigInt, b: BigInt },
    NotFound,
}

impl PatternFit {
    fn render(&self) -> String {
        match self {
            PatternFit::Line { a, b } => {
                IntPoly::new(vec![b.clone(), a.clone()]).render('n')
            }
            PatternFit::NotFound => "none".to_string(),
        }
    }
}

/// A quotient that falls off its level's fitted line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anomaly {
    /// 1-based peeling level.
    pub level: usize,
    pub n: u64,
    pub actual: BigInt,
    pub expected: BigInt,
}

/// Everything the peeling reconstruction finds for one assumed pi.
#[derive(Debug, Clone)]
pub struct ReconstructionReport {
    pub pi_assumed: BigRational,
    pub n_max: u64,
    pub depth: usize,
    /// `S(n)` for `n = 1..=n_max`.
    pub gaps: Vec<BigRational>,
    /// `quotients[level][n-1]`; `None` once a remainder hit zero or a gap
    /// was not peelable.
    pub quotients: Vec<Vec<Option<BigInt>>>,
    /// Fitted pattern per level.
    pub patterns: Vec<PatternFit>,
    pub anomalies: Vec<Anomaly>,
    /// Implied correction per depth `1..=depth` (nested fraction of the
    /// fitted lines), where every level that deep has a pattern.
    pub implied: Vec<Option<RatFun>>,
}

/// Fits `a*n + b` to the points by the dominant pairwise slope: take the two
/// most frequent exact integer slopes, give each its majority intercept, and
/// accept the line covering the most points if that count reaches
/// `ceil((n_max+1)/2) + 1`.
fn fit_line(points: &[(u64, BigInt)], n_max: u64) -> (PatternFit, Vec<(u64, BigInt, BigInt)>) {
    let threshold = ((n_max + 1).div_ceil(2) + 1) as usize;
    if points.len() < 2 {
        return (PatternFit::NotFound, vec![]);
    }
    let mut slope_counts: HashMap<BigInt, usize> = HashMap::new();
    for (i, (ni, qi)) in points.iter().enumerate() {
        for (nj, qj) in points.iter().skip(i + 1) {
            let dn = BigInt::from(nj - ni);
            let (slope, rem) = (qj - qi).div_rem(&dn);
            if rem.is_zero() {
                *slope_counts.entry(slope).or_insert(0) += 1;
            }
        }
    }
    let mut slopes: Vec<(BigInt, usize)> = slope_counts.into_iter().collect();
    slopes.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
    let mut best: Option<(usize, usize, BigInt, BigInt)> = None;
    for (a, slope_count) in slopes.into_iter().take(2) {
        let mut intercepts: HashMap<BigInt, usize> = HashMap::new();
        for (n, q) in points {
            let b = q - &a * BigInt::from(*n);
            *intercepts.entry(b).or_insert(0) += 1;
        }
        let mut votes: Vec<(BigInt, usize)> = intercepts.into_iter().collect();
        votes.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
        let (b, coverage) = votes.into_iter().next().expect("nonempty points");
        let candidate = (coverage, slope_count, a, b);
        let better = match &best {
            None => true,
            Some(cur) => {
                (candidate.0, candidate.1, &cur.2, &cur.3)
                    > (cur.0, cur.1, &candidate.2, &candidate.3)
            }
        };
        if better {
            best = Some(candidate);
        }
    }
    match best {
        Some((coverage, _, a, b)) if coverage >= threshold => {
            let off: Vec<(u64, BigInt, BigInt)> = points
                .iter()
                .filter_map(|(n, q)| {
                    let expected = &a * BigInt::from(*n) + &b;
                    (*q != expected).then(|| (*n, q.clone(), expected))
                })
                .collect();
            (PatternFit::Line { a, b }, off)
        }
        _ => (PatternFit::NotFound, vec![]),
    }
}

/// Runs the full peeling reconstruction: gaps, quotient layers, fitted
/// patterns, anomalies, and implied corrections.
pub fn reconstruct(
    pi_assumed: &BigRational,
    n_max: u64,
    depth: usize,
) -> Result<ReconstructionReport> {
    if n_max < 3 {
        return Err(Error::domain(
            "pattern fitting needs at least three term counts",
        ));
    }
    if depth == 0 {
        return Err(Error::domain("peeling depth must be at least 1"));
    }
    let mut gaps = Vec::with_capacity(n_max as usize);
    let mut quotients = vec![vec![None; n_max as usize]; depth];
    for n in 1..=n_max {
        let s = s_of_n(pi_assumed, n)?;
        if s >= BigRational::one() {
            return Err(Error::domain(format!(
                "assumed pi is too far from the partial sums: S({n}) = {s} >= 1"
            )));
        }
        let mut q = s.clone();
        gaps.push(s);
        for level in quotients.iter_mut() {
            if q.is_zero() {
                break;
            }
            let layer = peel(&q)?;
            level[n as usize - 1] = Some(layer.quotient);
            q = layer.remainder;
        }
    }
    let mut patterns = Vec::with_capacity(depth);
    let mut anomalies = Vec::new();
    for (level_idx, level) in quotients.iter().enumerate() {
        let points: Vec<(u64, BigInt)> = level
            .iter()
            .enumerate()
            .filter_map(|(i, q)| q.clone().map(|q| (i as u64 + 1, q)))
            .collect();
        let (fit, off) = fit_line(&points, n_max);
        for (n, actual, expected) in off {
            anomalies.push(Anomaly {
                level: level_idx + 1,
                n,
                actual,
                expected,
            });
        }
        patterns.push(fit);
    }
    let implied = (1..=depth)
        .map(|d| implied_correction(&patterns[..d]))
        .collect();
    Ok(ReconstructionReport {
        pi_assumed: pi_assumed.clone(),
        n_max,
        depth,
        gaps,
        quotients,
        patterns,
        anomalies,
        implied,
    })
}

/// Builds the nested fraction `1/(l_1 + 1/(l_2 + ... + 1/l_d))` from fitted
/// lines `l_i = a_i n + b_i`; `None` if any level lacks a pattern.
fn implied_correction(patterns: &[PatternFit]) -> Option<RatFun> {
    let lines: Option<Vec<IntPoly>> = patterns
        .iter()
        .map(|p| match p {
            PatternFit::Line { a, b } => {
                Some(IntPoly::new(vec![b.clone(), a.clone()]))
            }
            PatternFit::NotFound => None,
        })
        .collect();
    let lines = lines?;
    let mut acc = RatFun::zero();
    for line in lines.iter().rev() {
        let with_line = RatFun::from_poly(line.clone()).add(&acc);
        // a fitted level is never the zero polynomial, so this inverts
        acc = with_line.recip().ok()?;
    }
    Some(acc)
}

/// The mediant of two fractions as displayed: numerators and denominators
/// added part-wise, then reduced.
pub fn mediant(
    a_num: &IntPoly,
    a_den: &IntPoly,
    b_num: &IntPoly,
    b_den: &IntPoly,
) -> Result<RatFun> {
    RatFun::new(a_num.add(b_num), a_den.add(b_den))
}

/// Integer-pair mediant: `(a_num + b_num)/(a_den + b_den)`.
pub fn mediant_rational(
    a: (&BigInt, &BigInt),
    b: (&BigInt, &BigInt),
) -> Result<BigRational> {
    let den = a.1 + b.1;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(a.0 + b.0, den))
}

impl std::fmt::Display for ReconstructionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "assumed pi = {}, n = 1..{}, depth {}",
            self.pi_assumed, self.n_max, self.depth
        )?;
        let gaps: Vec<String> = self.gaps.iter().map(|s| s.to_string()).collect();
        writeln!(f, "S(n): {}", gaps.join("  "))?;
        for (i, level) in self.quotients.iter().enumerate() {
            let cells: Vec<String> = level
                .iter()
                .map(|q| q.as_ref().map_or("-".to_string(), |q| q.to_string()))
                .collect();
            write!(
                f,
                "level {} quotients: {:<24} pattern: {}",
                i + 1,
                cells.join(" "),
                self.patterns[i].render()
            )?;
            let offenders: Vec<String> = self
                .anomalies
                .iter()
                .filter(|a| a.level == i + 1)
                .map(|a| format!("n={}: {} instead of {}", a.n, a.actual, a.expected))
                .collect();
            if offenders.is_empty() {
                writeln!(f)?;
            } else {
                writeln!(f, " (anomaly at {})", offenders.join(", "))?;
            }
        }
        let implied: Vec<String> = self
            .implied
            .iter()
            .map(|c| c.as_ref().map_or("none".to_string(), |c| c.render('n')))
            .collect();
        writeln!(f, "implied corrections: {}", implied.join(", "))
    }
}
