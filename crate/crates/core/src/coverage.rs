//! Coverage of `[0, 1]` by the level-`n` images `S_sigma(I)`.
//!
//! `N_n(x, I)` is the total weight `p_sigma` of the words of length `n` with
//! `x in S_sigma(I)`. As a function of `x` it is piecewise constant, and a
//! [`CoverageProfile`] stores it as a sorted list of breakpoints with the
//! weight on each open cell between them (and at each breakpoint).
//!
//! Upper bounds come from `k = min_{x in I} N_n(x, I)`:
//! `ulocdim mu(x) <= log k / (n log rho)` when `I` is admissible.
//! Lower bounds come from `sup_y N_n(y)`: under the asymptotically weak
//! separation condition, `llocdim mu(x) >= log sup_y N_n(y) / (n log rho)`.

use serde::Serialize;

use crate::algebraic::Certificate;
use crate::ifs::{IfsSpec, Interval, Word, ENDPOINT_EPS};
use crate::{Error, Result};

/// Largest word length [`enumerate_images`] accepts by default.
pub const DEFAULT_MAX_DEPTH: usize = 20;
/// Largest number of words [`enumerate_images`] accepts by default.
pub const DEFAULT_MAX_WORDS: u128 = 1 << 24;

/// Left ends `b` of the symmetric candidate intervals `(b, 1 - b)` tried by
/// [`upper_bound`] in addition to the always-admissible one.
pub const DEFAULT_CANDIDATE_BS: [f64; 3] = [0.1, 0.2, 0.3];

/// Default cap on `n` when searching for an admissibility witness.
pub const DEFAULT_ADMISSIBILITY_N_MAX: usize = 10;

/// One image `S_word(I)` with weight `p_word`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedInterval {
    pub lo: f64,
    pub hi: f64,
    pub weight: f64,
    pub word: Word,
}

fn check_enumeration(spec: &IfsSpec, n: usize) -> Result<()> {
    let words = (spec.alphabet_size() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if n > DEFAULT_MAX_DEPTH || words > DEFAULT_MAX_WORDS {
        return Err(Error::EnumerationCap {
            words,
            limit: DEFAULT_MAX_WORDS,
        });
    }
    Ok(())
}

/// Offsets `S_sigma(0)` and weights `p_sigma` of all words of length `n`, in
/// lexicographic order of the words.
pub fn level_offsets(spec: &IfsSpec, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    check_enumeration(spec, n)?;
    let size = spec.alphabet_size().pow(n as u32);
    let mut offsets = Vec::with_capacity(size);
    let mut weights = Vec::with_capacity(size);
    offsets.push(0.0);
    weights.push(1.0);
    let mut scale = 1.0;
    for _ in 0..n {
        let mut next_offsets = Vec::with_capacity(offsets.len() * spec.alphabet_size());
        let mut next_weights = Vec::with_capacity(next_offsets.capacity());
        for (&o, &w) in offsets.iter().zip(&weights) {
            for (&d, &p) in spec.digits().iter().zip(spec.probs()) {
                next_offsets.push(o + scale * d);
                next_weights.push(w * p);
            }
        }
        offsets = next_offsets;
        weights = next_weights;
        scale *= spec.rho();
    }
    Ok((offsets, weights))
}

/// All `(m+1)^n` images `S_sigma(I)`, `|sigma| = n`, in lexicographic word order.
pub fn enumerate_images(spec: &IfsSpec, interval: &Interval, n: usize) -> Result<Vec<WeightedInterval>> {
    let (offsets, weights) = level_offsets(spec, n)?;
    let scale = spec.rho().powi(n as i32);
    let base = spec.alphabet_size();
    Ok(offsets
        .into_iter()
        .zip(weights)
        .enumerate()
        .map(|(index, (o, w))| WeightedInterval {
            lo: o + scale * interval.lo,
            hi: o + scale * interval.hi,
            weight: w,
            word: Word::from_index(index as u64, n, base),
        })
        .collect())
}

/// Piecewise-constant total weight of a family of closed intervals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageProfile {
    breakpoints: Vec<f64>,
    cell_weights: Vec<f64>,
    point_weights: Vec<f64>,
}

/// A cell `(lo, hi)` of a profile and the weight on it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cell {
    pub lo: f64,
    pub hi: f64,
    pub weight: f64,
}

impl Cell {
    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct Accumulator {
    sum: f64,
    compensation: f64,
}

impl Accumulator {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl CoverageProfile {
    /// Builds the profile of closed intervals `(lo, hi, weight)`. Endpoints
    /// within `eps` of the first endpoint of their cluster are merged.
    pub fn from_intervals<I>(intervals: I, eps: f64) -> Self
    where
        I: IntoIterator<Item = (f64, f64, f64)>,
    {
        // (position, weight entering, weight leaving)
        let mut events: Vec<(f64, f64, f64)> = Vec::new();
        for (lo, hi, w) in intervals {
            events.push((lo, w, 0.0));
            events.push((hi, 0.0, w));
        }
        events.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut breakpoints = Vec::new();
        let mut cell_weights = Vec::new();
        let mut point_weights = Vec::new();
        let mut running = Accumulator::default();
        let mut i = 0;
        while i < events.len() {
            let x = events[i].0;
            let mut entering = Accumulator::default();
            let mut leaving = Accumulator::default();
            while i < events.len() && events[i].0 - x <= eps {
                entering.add(events[i].1);
                leaving.add(events[i].2);
                i += 1;
            }
            breakpoints.push(x);
            point_weights.push(running.value() + entering.value());
            running.add(entering.value());
            running.add(-leaving.value());
            if i < events.len() {
                cell_weights.push(running.value().max(0.0));
            }
        }
        CoverageProfile {
            breakpoints,
            cell_weights,
            point_weights,
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn cell_weights(&self) -> &[f64] {
        &self.cell_weights
    }

    /// Weight at each (merged) breakpoint, counting every closed interval
    /// that contains it.
    pub fn point_weights(&self) -> &[f64] {
        &self.point_weights
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.breakpoints
            .windows(2)
            .zip(&self.cell_weights)
            .map(|(b, &weight)| Cell {
                lo: b[0],
                hi: b[1],
                weight,
            })
    }

    /// Profile value at `x`: the breakpoint weight within `eps` of a
    /// breakpoint, the cell weight otherwise, 0 outside the hull.
    pub fn value_at(&self, x: f64, eps: f64) -> f64 {
        let idx = self.breakpoints.partition_point(|&b| b < x - eps);
        if idx < self.breakpoints.len() && (self.breakpoints[idx] - x).abs() <= eps {
            return self.point_weights[idx];
        }
        if idx == 0 || idx == self.breakpoints.len() {
            return 0.0;
        }
        self.cell_weights[idx - 1]
    }

    /// Largest cell weight, with the leftmost cell attaining it.
    pub fn max_cell(&self) -> Option<Cell> {
        self.cells().fold(None, |best: Option<Cell>, c| match best {
            Some(b) if b.weight >= c.weight => Some(b),
            _ => Some(c),
        })
    }

    /// Largest value over the closed hull, breakpoints included.
    pub fn max_closed(&self) -> f64 {
        let cells = self.cell_weights.iter().copied();
        let points = self.point_weights.iter().copied();
        cells.chain(points).fold(0.0, f64::max)
    }

    /// Smallest weight over the open cells meeting the interior of `within`;
    /// parts of `within` outside the hull count as weight 0.
    pub fn min_over(&self, within: &Interval, eps: f64) -> f64 {
        let (first, last) = match (self.breakpoints.first(), self.breakpoints.last()) {
            (Some(&f), Some(&l)) => (f, l),
            _ => return 0.0,
        };
        if within.lo < first - eps || within.hi > last + eps {
            return 0.0;
        }
        self.cells()
            .filter(|c| c.hi > within.lo + eps && c.lo < within.hi - eps)
            .map(|c| c.weight)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Profile of a family of weighted images.
pub fn coverage_profile(images: &[WeightedInterval]) -> CoverageProfile {
    CoverageProfile::from_intervals(images.iter().map(|w| (w.lo, w.hi, w.weight)), ENDPOINT_EPS)
}

/// Profile of `N_n(., I)` built straight from the level offsets.
pub fn level_profile(spec: &IfsSpec, interval: &Interval, n: usize) -> Result<CoverageProfile> {
    let (offsets, weights) = level_offsets(spec, n)?;
    let scale = spec.rho().powi(n as i32);
    let (a, b) = (scale * interval.lo, scale * interval.hi);
    Ok(CoverageProfile::from_intervals(
        offsets.iter().zip(&weights).map(|(&o, &w)| (o + a, o + b, w)),
        ENDPOINT_EPS,
    ))
}

/// `k = min_{x in I} N_n(x, I)`, over the open cells meeting the interior of `I`.
pub fn min_coverage(spec: &IfsSpec, interval: &Interval, n: usize) -> Result<f64> {
    Ok(level_profile(spec, interval, n)?.min_over(interval, ENDPOINT_EPS))
}

/// `sup_y N_n(y)` with the leftmost cell attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupCoverage {
    pub value: f64,
    pub witness: Cell,
}

/// Largest cell weight of the profile of `N_n(.)` on `[0, 1]`.
pub fn sup_coverage(spec: &IfsSpec, n: usize) -> Result<SupCoverage> {
    let profile = level_profile(spec, &Interval::unit(), n)?;
    let witness = profile
        .max_cell()
        .unwrap_or(Cell {
            lo: 0.0,
            hi: 1.0,
            weight: 1.0,
        });
    Ok(SupCoverage {
        value: witness.weight,
        witness,
    })
}

/// `sup_y N_n(y)` over closed images, so that points where two images only
/// touch count both. Differs from [`sup_coverage`] only at transition points.
pub fn sup_coverage_closed(spec: &IfsSpec, n: usize) -> Result<f64> {
    Ok(level_profile(spec, &Interval::unit(), n)?.max_closed())
}

/// `N_n(x, I)` by depth-first search, descending only into words whose image
/// of `[0, 1]` contains `x` (within [`ENDPOINT_EPS`]).
pub fn pointwise_n(spec: &IfsSpec, x: f64, n: usize, interval: &Interval) -> f64 {
    fn descend(spec: &IfsSpec, x: f64, depth: usize, n: usize, offset: f64, scale: f64, weight: f64, interval: &Interval) -> f64 {
        if depth == n {
            let lo = offset + scale * interval.lo;
            let hi = offset + scale * interval.hi;
            return if x >= lo - ENDPOINT_EPS && x <= hi + ENDPOINT_EPS { weight } else { 0.0 };
        }
        let child_scale = scale * spec.rho();
        spec.digits()
            .iter()
            .zip(spec.probs())
            .map(|(&d, &p)| {
                let child = offset + scale * d;
                if x < child - ENDPOINT_EPS || x > child + child_scale + ENDPOINT_EPS {
                    0.0
                } else {
                    descend(spec, x, depth + 1, n, child, child_scale, weight * p, interval)
                }
            })
            .sum()
    }
    descend(spec, x, 0, n, 0.0, 1.0, 1.0, interval)
}

/// How a symmetric interval `(b, 1 - b)` was shown to satisfy the upper-bound
/// hypothesis that every `x in (0, 1)` lies in some image `S_sigma(I)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Admissibility {
    /// `b` is below the self-covering threshold.
    Direct,
    /// The level-`n` images of `I` cover the self-covering interval `(a, 1 - a)`.
    Union(usize),
    NotVerified,
}

impl Admissibility {
    pub fn is_ok(self) -> bool {
        !matches!(self, Admissibility::NotVerified)
    }
}

/// Supremum `a*` of the `a` for which `(a, 1 - a)` covers itself at level 1:
/// `a* = (1 - g / rho) / 2` with `g` the largest digit gap. For Bernoulli
/// convolutions this is `1 - 1 / (2 rho)`.
pub fn self_covering_threshold(spec: &IfsSpec) -> f64 {
    let gap = spec.digits().windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    0.5 * (1.0 - gap / spec.rho())
}

/// The always-admissible interval `(a, 1 - a)` with `a = a* / 2`; for
/// Bernoulli convolutions `(1/2 - 1/(4 rho), 1/2 + 1/(4 rho))`.
pub fn default_interval(spec: &IfsSpec) -> Option<Interval> {
    let a = 0.5 * self_covering_threshold(spec);
    (a > 0.0).then(|| Interval::symmetric(a))
}

/// Checks the symmetric interval `(b, 1 - b)`: directly when `b < a*`, else
/// by finding the least `n <= n_max` whose images cover `(a, 1 - a)`.
pub fn admissible_interval(spec: &IfsSpec, b: f64, n_max: usize) -> Admissibility {
    let threshold = self_covering_threshold(spec);
    if threshold <= 0.0 || !(0.0..0.5).contains(&b) {
        return Admissibility::NotVerified;
    }
    if b < threshold {
        return Admissibility::Direct;
    }
    let a = 0.5 * threshold;
    let interval = Interval::symmetric(b);
    for n in 1..=n_max {
        let Ok((offsets, _)) = level_offsets(spec, n) else {
            break;
        };
        let scale = spec.rho().powi(n as i32);
        let mut images: Vec<(f64, f64)> = offsets
            .iter()
            .map(|&o| (o + scale * interval.lo, o + scale * interval.hi))
            .collect();
        images.sort_by(|x, y| x.0.total_cmp(&y.0));
        if open_union_covers(&images, a, 1.0 - a) {
            return Admissibility::Union(n);
        }
    }
    Admissibility::NotVerified
}

/// Whether the union of open intervals (sorted by left end) covers `(a, b)`.
fn open_union_covers(sorted: &[(f64, f64)], a: f64, b: f64) -> bool {
    let mut reach = f64::NEG_INFINITY;
    for &(lo, hi) in sorted {
        let starts_chain = reach == f64::NEG_INFINITY && lo <= a;
        let extends = reach > f64::NEG_INFINITY && lo < reach - ENDPOINT_EPS;
        if starts_chain || extends {
            reach = reach.max(hi);
            if reach >= b {
                return true;
            }
        } else if reach > f64::NEG_INFINITY || lo > a {
            return false;
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CoverageMethod {
    CoverageUpper,
    CoverageLower,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ValidityFlags {
    pub hypothesis_checked: bool,
    pub awsc_required: bool,
    pub awsc_certified: bool,
}

/// One coverage bound at one contraction factor.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundResult {
    pub rho: f64,
    pub method: CoverageMethod,
    pub n: Option<usize>,
    pub interval: Option<Interval>,
    /// `None` when no admissible configuration produced a bound.
    pub value: Option<f64>,
    /// The coverage quantity (`k` or `sup N_n`) behind `value`.
    pub coverage: Option<f64>,
    pub flags: ValidityFlags,
    pub reason: Option<String>,
}

/// `log k / (n log rho)` for a fixed interval and level; `None` if `k = 0`.
pub fn coverage_upper_bound(spec: &IfsSpec, interval: &Interval, n: usize) -> Result<Option<(f64, f64)>> {
    if n == 0 {
        return Ok(None);
    }
    let k = min_coverage(spec, interval, n)?;
    Ok((k > 0.0).then(|| (k.ln() / (n as f64 * spec.rho().ln()), k)))
}

/// Candidate intervals tried by [`upper_bound`]: the always-admissible
/// interval followed by `(b, 1 - b)` for each `b` in `bs`.
pub fn candidate_intervals(spec: &IfsSpec, bs: &[f64]) -> Vec<Interval> {
    default_interval(spec)
        .into_iter()
        .chain(bs.iter().map(|&b| Interval::symmetric(b)))
        .collect()
}

/// Best coverage upper bound over the admissible candidate intervals and
/// `1 <= n <= n_max`.
pub fn upper_bound(spec: &IfsSpec, n_max: usize, bs: &[f64]) -> Result<BoundResult> {
    upper_bound_with(spec, n_max, bs, DEFAULT_ADMISSIBILITY_N_MAX)
}

/// [`upper_bound`] with a custom cap on the admissibility search.
pub fn upper_bound_with(spec: &IfsSpec, n_max: usize, bs: &[f64], admissibility_n_max: usize) -> Result<BoundResult> {
    let mut best: Option<(f64, f64, usize, Interval)> = None;
    for interval in candidate_intervals(spec, bs) {
        if !admissible_interval(spec, interval.lo, admissibility_n_max).is_ok() {
            continue;
        }
        for n in 1..=n_max {
            if let Some((value, k)) = coverage_upper_bound(spec, &interval, n)? {
                if best.is_none_or(|(v, ..)| value < v) {
                    best = Some((value, k, n, interval));
                }
            }
        }
    }
    let flags = ValidityFlags {
        hypothesis_checked: true,
        ..ValidityFlags::default()
    };
    Ok(match best {
        Some((value, k, n, interval)) => BoundResult {
            rho: spec.rho(),
            method: CoverageMethod::CoverageUpper,
            n: Some(n),
            interval: Some(interval),
            value: Some(value),
            coverage: Some(k),
            flags,
            reason: None,
        },
        None => BoundResult {
            rho: spec.rho(),
            method: CoverageMethod::CoverageUpper,
            n: None,
            interval: None,
            value: None,
            coverage: None,
            flags,
            reason: Some("no admissible interval with positive k".into()),
        },
    })
}

/// `log sup_y N_n(y) / (n log rho)`. Valid only under the asymptotically
/// weak separation condition, which is recorded as certified only when a
/// certificate says so.
pub fn lower_bound(spec: &IfsSpec, n: usize, certificate: Option<&Certificate>) -> Result<BoundResult> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange("lower bound needs n >= 1".into()));
    }
    let sup = sup_coverage(spec, n)?;
    Ok(lower_result(spec, n, sup.value, certificate))
}

fn lower_result(spec: &IfsSpec, n: usize, sup: f64, certificate: Option<&Certificate>) -> BoundResult {
    BoundResult {
        rho: spec.rho(),
        method: CoverageMethod::CoverageLower,
        n: Some(n),
        interval: Some(Interval::unit()),
        value: Some(sup.ln() / (n as f64 * spec.rho().ln())),
        coverage: Some(sup),
        flags: ValidityFlags {
            hypothesis_checked: true,
            awsc_required: true,
            awsc_certified: certificate.is_some_and(|c| c.awsc_known),
        },
        reason: None,
    }
}

/// Largest of the lower bounds for `1 <= n <= n_max`. With `closed`, images
/// that only touch are counted together (the value at a transition point).
pub fn best_lower_bound(spec: &IfsSpec, n_max: usize, closed: bool, certificate: Option<&Certificate>) -> Result<BoundResult> {
    if n_max == 0 {
        return Err(Error::ParameterOutOfRange("lower bound needs n >= 1".into()));
    }
    let mut best: Option<BoundResult> = None;
    for n in 1..=n_max {
        let sup = if closed { sup_coverage_closed(spec, n)? } else { sup_coverage(spec, n)?.value };
        let candidate = lower_result(spec, n, sup, certificate);
        if best.as_ref().is_none_or(|b| candidate.value > b.value) {
            best = Some(candidate);
        }
    }
    Ok(best.expect("n_max >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unbiased(rho: f64) -> IfsSpec {
        IfsSpec::bernoulli(rho, 0.5).unwrap()
    }

    #[test]
    fn enumerate_zero_level_is_identity() {
        let spec = unbiased(0.7);
        let images = enumerate_images(&spec, &Interval::closed(0.2, 0.9), 0).unwrap();
        assert_eq!(images.len(), 1);
        assert_eq!((images[0].lo, images[0].hi, images[0].weight), (0.2, 0.9, 1.0));
        assert!(images[0].word.is_empty());
    }

    #[test]
    fn enumerate_is_lexicographic_and_counts() {
        let base = IfsSpec::bernoulli(0.5, 0.5).unwrap();
        let spec = IfsSpec::convolution(&base, 2).unwrap();
        let images = enumerate_images(&spec, &Interval::unit(), 3).unwrap();
        assert_eq!(images.len(), 27);
        assert!(images.windows(2).all(|w| w[0].word < w[1].word));
        for img in &images {
            let mapped = spec.map_interval(&img.word, &Interval::unit()).unwrap();
            assert!((mapped.lo - img.lo).abs() < 1e-14);
            assert!((spec.word_weight(&img.word).unwrap() - img.weight).abs() < 1e-15);
        }
    }

    #[test]
    fn enumeration_cap() {
        let spec = unbiased(0.7);
        assert!(matches!(
            enumerate_images(&spec, &Interval::unit(), 25),
            Err(Error::EnumerationCap { .. })
        ));
    }

    #[test]
    fn profile_examples() {
        let p = CoverageProfile::from_intervals([(0.0, 1.0, 1.0)], ENDPOINT_EPS);
        assert_eq!(p.cell_weights(), &[1.0]);

        let p = CoverageProfile::from_intervals([(0.0, 0.6, 0.5), (0.4, 1.0, 0.5)], ENDPOINT_EPS);
        assert_eq!(p.breakpoints(), &[0.0, 0.4, 0.6, 1.0]);
        assert_eq!(p.cell_weights(), &[0.5, 1.0, 0.5]);
        assert_eq!(p.value_at(0.2, ENDPOINT_EPS), 0.5);
        assert_eq!(p.value_at(0.5, ENDPOINT_EPS), 1.0);
        assert_eq!(p.value_at(1.5, ENDPOINT_EPS), 0.0);
    }

    #[test]
    fn touching_intervals_merge_into_one_breakpoint() {
        let p = CoverageProfile::from_intervals([(0.0, 0.5, 0.5), (0.5 + 1e-14, 1.0, 0.5)], ENDPOINT_EPS);
        assert_eq!(p.breakpoints().len(), 3);
        assert_eq!(p.cell_weights(), &[0.5, 0.5]);
        assert_eq!(p.point_weights()[1], 1.0);
        assert_eq!(p.max_cell().unwrap().weight, 0.5);
        assert_eq!(p.max_closed(), 1.0);
    }

    #[test]
    fn gaps_inside_the_hull_are_zero_cells() {
        let p = CoverageProfile::from_intervals([(0.0, 0.3, 1.0), (0.6, 1.0, 1.0)], ENDPOINT_EPS);
        assert_eq!(p.cell_weights(), &[1.0, 0.0, 1.0]);
        assert_eq!(p.min_over(&Interval::open(0.1, 0.9), ENDPOINT_EPS), 0.0);
        assert_eq!(p.min_over(&Interval::open(0.1, 0.25), ENDPOINT_EPS), 1.0);
    }

    #[test]
    fn min_coverage_examples() {
        let spec = unbiased(0.8);
        let k = min_coverage(&spec, &Interval::open(0.3, 0.7), 4).unwrap();
        assert!((k - 3.0 / 16.0).abs() < 1e-12);
        assert_eq!(min_coverage(&spec, &Interval::open(0.0, 1.0), 0).unwrap(), 1.0);
    }

    #[test]
    fn min_coverage_matches_grid_brute_force() {
        let spec = unbiased(0.8);
        let interval = Interval::open(0.3, 0.7);
        let words: Vec<Word> = (0..16).map(|i| Word::from_index(i, 4, 2)).collect();
        let mut min = f64::INFINITY;
        for i in 1..100_000 {
            let x = 0.3 + 0.4 * i as f64 / 100_000.0;
            let total: f64 = words
                .iter()
                .filter(|w| spec.map_interval(w, &interval).unwrap().contains(x, 0.0))
                .map(|w| spec.word_weight(w).unwrap())
                .sum();
            min = min.min(total);
        }
        assert_eq!(min, 3.0 / 16.0);
    }

    #[test]
    fn sup_coverage_examples() {
        let spec = unbiased(0.8);
        let sup = sup_coverage(&spec, 4).unwrap();
        assert!((sup.value - 14.0 / 16.0).abs() < 1e-12);
        assert!(sup.witness.contains(0.5));
        assert_eq!(sup_coverage(&spec, 0).unwrap().value, 1.0);
    }

    #[test]
    fn sup_coverage_at_half_exercises_merging() {
        // At rho = 1/2 the level-n images are dyadic intervals that only
        // touch, so every open cell carries exactly one word.
        let spec = unbiased(0.5);
        for n in 1..=6 {
            let sup = sup_coverage(&spec, n).unwrap();
            assert!((sup.value - 0.5f64.powi(n as i32)).abs() < 1e-15, "n = {n}");
            let closed = sup_coverage_closed(&spec, n).unwrap();
            assert!((closed - 2.0 * 0.5f64.powi(n as i32)).abs() < 1e-15);
        }
        let lb = lower_bound(&spec, 4, None).unwrap();
        assert!((lb.value.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pointwise_examples() {
        let spec = unbiased(0.8);
        assert!((pointwise_n(&spec, 0.5, 4, &Interval::unit()) - 14.0 / 16.0).abs() < 1e-15);
        // Table rows containing 0.5: 0011, 0101, 0110, 1001, 1010, 1100.
        assert!((pointwise_n(&spec, 0.5, 4, &Interval::closed(0.3, 0.7)) - 6.0 / 16.0).abs() < 1e-15);
        let biased = IfsSpec::bernoulli(0.7, 0.3).unwrap();
        for n in 0..8 {
            let v = pointwise_n(&biased, 0.0, n, &Interval::unit());
            assert!((v - 0.3f64.powi(n as i32)).abs() < 1e-15);
        }
    }

    #[test]
    fn admissibility_examples() {
        let spec = unbiased(0.8);
        assert_eq!(admissible_interval(&spec, 0.3, 10), Admissibility::Direct);
        assert_eq!(admissible_interval(&spec, 0.1875, 10), Admissibility::Direct);
        assert!((self_covering_threshold(&spec) - 0.375).abs() < 1e-15);
        let slim = unbiased(0.51);
        assert_eq!(admissible_interval(&slim, 0.3, 10), Admissibility::NotVerified);
        // b above the threshold: the level-n images keep a gap around 1/2.
        let spec = unbiased(0.6);
        assert!((self_covering_threshold(&spec) - (1.0 - 1.0 / 1.2)).abs() < 1e-15);
        assert_eq!(admissible_interval(&spec, 0.2, 10), Admissibility::NotVerified);
    }

    #[test]
    fn open_union_rejects_touching_images() {
        assert!(!open_union_covers(&[(0.0, 0.5), (0.5, 1.0)], 0.1, 0.9));
        assert!(open_union_covers(&[(0.0, 0.5), (0.4, 1.0)], 0.1, 0.9));
        assert!(!open_union_covers(&[(0.2, 1.0)], 0.1, 0.9));
    }

    #[test]
    fn upper_bound_examples() {
        let spec = unbiased(0.8);
        let (value, k) = coverage_upper_bound(&spec, &Interval::open(0.3, 0.7), 4).unwrap().unwrap();
        assert_eq!(k, 3.0 / 16.0);
        assert!((value - 1.876).abs() < 1e-3);
        let r = upper_bound(&spec, 0, &DEFAULT_CANDIDATE_BS).unwrap();
        assert!(r.value.is_none() && r.reason.is_some());
        let mut prev = f64::INFINITY;
        for n_max in 1..=10 {
            let v = upper_bound(&spec, n_max, &DEFAULT_CANDIDATE_BS).unwrap().value.unwrap();
            assert!(v <= prev);
            prev = v;
        }
        assert!(prev <= value);
    }

    #[test]
    fn lower_bound_examples() {
        let spec = unbiased(0.8);
        let r = lower_bound(&spec, 4, None).unwrap();
        let want = (14.0f64 / 16.0).ln() / (4.0 * 0.8f64.ln());
        assert!((r.value.unwrap() - want).abs() < 1e-15);
        assert!(r.flags.awsc_required && !r.flags.awsc_certified);
        let r8 = lower_bound(&spec, 8, None).unwrap();
        assert!(r8.value.unwrap() >= r.value.unwrap() - 1e-12);
        assert!(lower_bound(&spec, 0, None).is_err());
    }

    #[test]
    fn sup_is_submultiplicative() {
        for rho in [0.6, 0.7, 0.8] {
            let spec = unbiased(rho);
            for n in 1..=5 {
                let s = sup_coverage(&spec, n).unwrap().value;
                let s2 = sup_coverage(&spec, 2 * n).unwrap().value;
                assert!(s2 <= s * s + 1e-12, "rho = {rho}, n = {n}");
            }
        }
    }
}
