//! Equicontractive iterated function systems on `[0, 1]`.
//!
//! An [`IfsSpec`] is the family of maps `S_j(x) = rho * x + d_j`,
//! `j = 0..=m`, with `0 = d_0 < d_1 < ... < d_m = 1 - rho` and
//! probabilities `p_j`. Words index compositions: the word `s_1 s_2 ... s_n`
//! denotes `S_{s_1} o S_{s_2} o ... o S_{s_n}`, so `s_1` is applied last.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{Error, Result};

/// Tolerance used when two interval endpoints are considered to coincide.
pub const ENDPOINT_EPS: f64 = 1e-12;

/// Tolerance for probability sums and probability equality tests.
pub const PROB_TOL: f64 = 1e-12;

/// A violated [`IfsSpec`] invariant.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Violation {
    #[error("contraction factor {0} is not in (0, 1)")]
    RhoOutOfRange(f64),
    #[error("an IFS needs at least two maps, got {0}")]
    TooFewMaps(usize),
    #[error("{digits} digits but {probs} probabilities")]
    LengthMismatch { digits: usize, probs: usize },
    #[error("first digit must be 0, got {0}")]
    FirstDigitNotZero(f64),
    #[error("last digit must equal 1 - rho = {expected}, got {got}")]
    LastDigit { expected: f64, got: f64 },
    #[error("digits are not strictly increasing at index {0}")]
    DigitsNotIncreasing(usize),
    #[error("gap d_{index} - d_{} = {gap} exceeds rho = {rho}", .index - 1)]
    GapExceedsRho { index: usize, gap: f64, rho: f64 },
    #[error("probability p_{index} = {value} is not positive")]
    NonPositiveProbability { index: usize, value: f64 },
    #[error("probabilities sum to {0}, not 1")]
    ProbabilitySum(f64),
}

/// Checks every invariant of an IFS with attractor `[0, 1]`.
pub fn validate(rho: f64, digits: &[f64], probs: &[f64]) -> Result<(), Violation> {
    validate_relaxed(rho, digits, probs)?;
    for i in 1..digits.len() {
        let gap = digits[i] - digits[i - 1];
        if gap > rho + ENDPOINT_EPS {
            return Err(Violation::GapExceedsRho { index: i, gap, rho });
        }
    }
    Ok(())
}

/// Same as [`validate`] but admits gaps larger than `rho`, i.e. IFSs whose
/// attractor is a Cantor set inside `[0, 1]`.
pub fn validate_relaxed(rho: f64, digits: &[f64], probs: &[f64]) -> Result<(), Violation> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Violation::RhoOutOfRange(rho));
    }
    if digits.len() != probs.len() {
        return Err(Violation::LengthMismatch {
            digits: digits.len(),
            probs: probs.len(),
        });
    }
    if digits.len() < 2 {
        return Err(Violation::TooFewMaps(digits.len()));
    }
    if digits[0] != 0.0 {
        return Err(Violation::FirstDigitNotZero(digits[0]));
    }
    let last = digits[digits.len() - 1];
    if (last - (1.0 - rho)).abs() > ENDPOINT_EPS {
        return Err(Violation::LastDigit {
            expected: 1.0 - rho,
            got: last,
        });
    }
    if let Some(i) = (1..digits.len()).find(|&i| digits[i] <= digits[i - 1]) {
        return Err(Violation::DigitsNotIncreasing(i));
    }
    if let Some((index, &value)) = probs.iter().enumerate().find(|(_, &p)| !(p > 0.0)) {
        return Err(Violation::NonPositiveProbability { index, value });
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > PROB_TOL {
        return Err(Violation::ProbabilitySum(total));
    }
    Ok(())
}

/// A finite word over the alphabet `{0, ..., m}`. The empty word is the
/// identity map.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: Vec<u8>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn repeat(symbol: u8, len: usize) -> Self {
        Word(vec![symbol; len])
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Word for `self` followed by `other`, i.e. the map `S_self o S_other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = self.0.clone();
        symbols.extend_from_slice(&other.0);
        Word(symbols)
    }

    /// The `index`-th word of length `len` in lexicographic order.
    pub fn from_index(mut index: u64, len: usize, base: usize) -> Word {
        let mut symbols = vec![0u8; len];
        for slot in symbols.iter_mut().rev() {
            *slot = (index % base as u64) as u8;
            index /= base as u64;
        }
        Word(symbols)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| s < 10) {
            for s in &self.0 {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `"0110"` or, for alphabets beyond ten symbols, `"0,10,3"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::ParameterOutOfRange(format!("cannot parse word {s:?}"));
        if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<u8>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()
                .map(Word)
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
                .collect::<Result<Vec<_>>>()
                .map(Word)
        }
    }
}

/// An interval `[lo, hi]`. Openness flags only record intent; all
/// arithmetic treats endpoints as closed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    #[serde(default)]
    pub lo_open: bool,
    #[serde(default)]
    pub hi_open: bool,
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "interval [{lo}, {hi}] is reversed");
        Interval {
            lo,
            hi,
            lo_open: false,
            hi_open: false,
        }
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        Interval {
            lo_open: true,
            hi_open: true,
            ..Interval::closed(lo, hi)
        }
    }

    pub fn unit() -> Self {
        Interval::closed(0.0, 1.0)
    }

    /// The symmetric interval `(b, 1 - b)`.
    pub fn symmetric(b: f64) -> Self {
        Interval::open(b, 1.0 - b)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// Closed membership with slack `eps` on both sides.
    pub fn contains(&self, x: f64, eps: f64) -> bool {
        x >= self.lo - eps && x <= self.hi + eps
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_open { '(' } else { '[' };
        let r = if self.hi_open { ')' } else { ']' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// An equicontractive IFS `S_j(x) = rho * x + d_j` with probabilities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IfsSpec {
    rho: f64,
    digits: Vec<f64>,
    probs: Vec<f64>,
}

impl IfsSpec {
    /// Builds a spec whose attractor is `[0, 1]`.
    pub fn new(rho: f64, digits: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        validate(rho, &digits, &probs)?;
        Ok(IfsSpec { rho, digits, probs })
    }

    /// Builds a spec that may have a Cantor-set attractor (gaps above `rho`).
    pub fn relaxed(rho: f64, digits: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        validate_relaxed(rho, &digits, &probs)?;
        Ok(IfsSpec { rho, digits, probs })
    }

    /// Bernoulli convolution `S_0 = rho x`, `S_1 = rho x + 1 - rho` with
    /// probabilities `(p0, 1 - p0)`. Requires `rho >= 1/2`.
    pub fn bernoulli(rho: f64, p0: f64) -> Result<Self> {
        check_p0(p0)?;
        IfsSpec::new(rho, vec![0.0, 1.0 - rho], vec![p0, 1.0 - p0])
    }

    /// Like [`IfsSpec::bernoulli`] but also admits Cantor measures (`rho < 1/2`).
    pub fn bernoulli_relaxed(rho: f64, p0: f64) -> Result<Self> {
        check_p0(p0)?;
        IfsSpec::relaxed(rho, vec![0.0, 1.0 - rho], vec![p0, 1.0 - p0])
    }

    /// The `folds`-fold convolution of a two-map measure, rescaled to `[0, 1]`:
    /// `S_j(x) = rho x + j (1 - rho) / m` with binomial probabilities.
    ///
    /// The result has attractor `[0, 1]` iff `rho >= 1/(m+1)`; below that it is
    /// returned as a relaxed spec.
    pub fn convolution(base: &IfsSpec, folds: usize) -> Result<Self> {
        if base.digits.len() != 2 {
            return Err(Error::NotTwoMap(base.digits.len()));
        }
        if folds == 0 {
            return Err(Error::ParameterOutOfRange("convolution needs folds >= 1".into()));
        }
        if folds == 1 {
            return Ok(base.clone());
        }
        let rho = base.rho;
        let p = base.probs[0];
        let m = folds as f64;
        let mut digits: Vec<f64> = (0..=folds).map(|j| j as f64 * (1.0 - rho) / m).collect();
        digits[folds] = 1.0 - rho;
        let probs = binomial_weights(folds, p);
        if validate(rho, &digits, &probs).is_ok() {
            Ok(IfsSpec { rho, digits, probs })
        } else {
            IfsSpec::relaxed(rho, digits, probs)
        }
    }

    /// The IFS with equally spaced digits `j (1 - rho) / m` and the given
    /// probabilities.
    pub fn uniform_digits(rho: f64, probs: Vec<f64>) -> Result<Self> {
        let m = probs.len().saturating_sub(1);
        if m == 0 {
            return Err(Violation::TooFewMaps(probs.len()).into());
        }
        let mut digits: Vec<f64> = (0..=m).map(|j| j as f64 * (1.0 - rho) / m as f64).collect();
        digits[m] = 1.0 - rho;
        IfsSpec::relaxed(rho, digits, probs)
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn digits(&self) -> &[f64] {
        &self.digits
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Largest symbol `m`; the alphabet is `{0, ..., m}`.
    pub fn m(&self) -> usize {
        self.digits.len() - 1
    }

    pub fn alphabet_size(&self) -> usize {
        self.digits.len()
    }

    /// Whether the attractor is all of `[0, 1]` (every gap at most `rho`).
    pub fn has_unit_attractor(&self) -> bool {
        validate(self.rho, &self.digits, &self.probs).is_ok()
    }

    /// Same maps with a different contraction factor; digits are rescaled
    /// so that `d_m = 1 - rho` still holds.
    pub fn with_rho(&self, rho: f64) -> Result<Self> {
        let scale = (1.0 - rho) / (1.0 - self.rho);
        let mut digits: Vec<f64> = self.digits.iter().map(|d| d * scale).collect();
        let m = self.m();
        digits[m] = 1.0 - rho;
        if self.has_unit_attractor() {
            IfsSpec::new(rho, digits, self.probs.clone())
        } else {
            IfsSpec::relaxed(rho, digits, self.probs.clone())
        }
    }

    fn check_word(&self, word: &Word) -> Result<()> {
        match word.symbols().iter().find(|&&s| s as usize > self.m()) {
            Some(&symbol) => Err(Error::SymbolOutOfAlphabet {
                symbol,
                max: self.m(),
            }),
            None => Ok(()),
        }
    }

    /// `S_word(x)`, evaluated as the literal composition (innermost map first).
    pub fn map_point(&self, word: &Word, x: f64) -> Result<f64> {
        self.check_word(word)?;
        Ok(word
            .symbols()
            .iter()
            .rev()
            .fold(x, |y, &s| self.rho * y + self.digits[s as usize]))
    }

    /// `S_word(0)` and `rho^|word|`, so that `S_word(x) = offset + scale * x`.
    pub fn affine_parts(&self, word: &Word) -> Result<(f64, f64)> {
        self.check_word(word)?;
        let mut offset = 0.0;
        let mut scale = 1.0;
        for &s in word.symbols() {
            offset += scale * self.digits[s as usize];
            scale *= self.rho;
        }
        Ok((offset, scale))
    }

    /// `S_word(I)`. Openness flags are carried over.
    pub fn map_interval(&self, word: &Word, interval: &Interval) -> Result<Interval> {
        let (offset, scale) = self.affine_parts(word)?;
        Ok(Interval {
            lo: offset + scale * interval.lo,
            hi: offset + scale * interval.hi,
            ..*interval
        })
    }

    /// `p_word`, the product of the probabilities along the word.
    pub fn word_weight(&self, word: &Word) -> Result<f64> {
        self.check_word(word)?;
        Ok(word.symbols().iter().map(|&s| self.probs[s as usize]).product())
    }

    /// Consecutive first-level images overlap: `d_j + rho > d_{j+1}` for all j.
    pub fn strict_overlap(&self) -> bool {
        self.overlap_slack() > ENDPOINT_EPS
    }

    /// `min_j (d_{j-1} + rho - d_j)`, positive iff the images overlap.
    pub fn overlap_slack(&self) -> f64 {
        self.digits
            .windows(2)
            .map(|w| w[0] + self.rho - w[1])
            .fold(f64::INFINITY, f64::min)
    }

    /// The stronger overlap needed when `p_0 = p_m` are the minimal
    /// probabilities: strict overlap plus `S_{m-1}(1) > S_m S_1(0)` and
    /// `S_1(0) < S_0 S_{m-1}(1)`.
    pub fn unbiased_overlap(&self) -> Result<bool> {
        let m = self.m();
        if m < 2 {
            return Err(Error::TooFewMaps { needed: 2, got: m });
        }
        let (rho, d) = (self.rho, &self.digits);
        let left = rho * (d[m - 1] + rho) - d[1];
        let right = (d[m - 1] + rho) - (d[m] + rho * d[1]);
        Ok(self.strict_overlap() && left > ENDPOINT_EPS && right > ENDPOINT_EPS)
    }

    /// Which isolated-point theorem applies, and the local dimension at 0.
    pub fn isolated_point_report(&self) -> IsolatedPointReport {
        let p = &self.probs;
        let m = self.m();
        let applies_biased = self.strict_overlap() && p[1..].iter().all(|&q| p[0] < q - PROB_TOL);
        let applies_unbiased = m >= 2
            && self.unbiased_overlap().unwrap_or(false)
            && (p[0] - p[m]).abs() <= PROB_TOL
            && p[1..m].iter().all(|&q| p[0] < q - PROB_TOL);
        IsolatedPointReport {
            applies_biased,
            applies_unbiased,
            dim_at_zero: p[0].ln() / self.rho.ln(),
        }
    }
}

/// Outcome of [`IfsSpec::isolated_point_report`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsolatedPointReport {
    pub applies_biased: bool,
    pub applies_unbiased: bool,
    pub dim_at_zero: f64,
}

fn check_p0(p0: f64) -> Result<()> {
    if p0 > 0.0 && p0 < 1.0 {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange(format!("p0 = {p0} is not in (0, 1)")))
    }
}

/// `C(m, j) p^j (1-p)^(m-j)` for `j = 0..=m`, where `p` is the weight of
/// the left map (so index 0 carries `p^m`).
fn binomial_weights(m: usize, p: f64) -> Vec<f64> {
    let mut binom = 1.0f64;
    (0..=m)
        .map(|j| {
            if j > 0 {
                binom = binom * (m - j + 1) as f64 / j as f64;
            }
            binom * p.powi((m - j) as i32) * (1.0 - p).powi(j as i32)
        })
        .collect()
}
