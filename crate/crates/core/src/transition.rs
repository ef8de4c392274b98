//! Transition points of two-map families `S_0(x) = rho x`,
//! `S_1(x) = rho x + 1 - rho`.
//!
//! For words of length `n`, every image endpoint is a polynomial in `rho`, so
//! the arrangement of the level-`n` images (and therefore every coverage
//! quantity) only changes where two such polynomials agree. Writing
//! `e = sigma - tau in {-1, 0, 1}^n`,
//!
//! ```text
//! S_sigma(0) - S_tau(1) = sum_i e_i (rho^(i-1) - rho^i) - rho^n.
//! ```
//!
//! Extending `sigma` by 0 and `tau` by 1 keeps this polynomial, so the
//! level-`n` roots contain those of every lower level. For biased weights
//! two images swapping their left ends also moves weight between cells, and
//! [`TransitionKind::LeftCoincidence`] covers those.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebraic;
use crate::coverage::{self, Cell};
use crate::ifs::{IfsSpec, Interval, Word, ENDPOINT_EPS};
use crate::{Error, Result};

pub const MAX_LEVEL: usize = 12;
/// Number of subintervals of the root-isolation grid.
pub const GRID_POINTS: usize = 1 << 12;
/// Roots of different polynomials closer than this are reported once.
pub const DEDUP_TOL: f64 = 1e-10;
/// Two merged roots further apart than this are flagged as distinct numbers.
const MERGE_FLAG_TOL: f64 = 1e-12;
/// Residual below which a grid point without a sign change is still a root.
const ZERO_TOL: f64 = 1e-13;
const CONSTANCY_TOL: f64 = 1e-12;
const LABEL_TOL: f64 = 1e-9;

/// `S_0(x) = rho x`, `S_1(x) = rho x + 1 - rho` with weights `p0`, `1 - p0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BernoulliFamily {
    pub p0: f64,
}

impl BernoulliFamily {
    pub fn unbiased() -> Self {
        BernoulliFamily { p0: 0.5 }
    }

    pub fn is_unbiased(&self) -> bool {
        (self.p0 - 0.5).abs() < 1e-15
    }

    pub fn at(&self, rho: f64) -> Result<IfsSpec> {
        IfsSpec::bernoulli_relaxed(rho, self.p0)
    }

    /// The family through a spec, provided it has two maps.
    pub fn of(spec: &IfsSpec) -> Result<Self> {
        if spec.m() != 1 {
            return Err(Error::NotTwoMap(spec.alphabet_size()));
        }
        Ok(BernoulliFamily { p0: spec.probs()[0] })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TransitionKind {
    /// `S_sigma(0) = S_tau(1)`.
    Crossing,
    /// `S_sigma(0) = S_tau(0)`.
    LeftCoincidence,
}

/// A polynomial in `rho` whose roots are transition points, with the word
/// pair it came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransitionPolynomial {
    /// Coefficients, lowest degree first.
    pub coefficients: Vec<f64>,
    pub kind: TransitionKind,
    pub sigma: Word,
    pub tau: Word,
}

impl TransitionPolynomial {
    fn from_difference(e: &[i8], kind: TransitionKind) -> Self {
        let n = e.len();
        let mut c = vec![0.0; n + 1];
        match kind {
            TransitionKind::Crossing => {
                for (i, &ei) in e.iter().enumerate() {
                    c[i] += ei as f64;
                    c[i + 1] -= ei as f64;
                }
                c[n] -= 1.0;
            }
            TransitionKind::LeftCoincidence => {
                // (1 - rho) * sum e_i rho^(i-1); the factor has no root in (0, 1).
                for (i, &ei) in e.iter().enumerate() {
                    c[i] = ei as f64;
                }
                c.pop();
            }
        }
        let sigma = Word::new(e.iter().map(|&x| x.max(0) as u8).collect());
        let tau = Word::new(e.iter().map(|&x| (-x).max(0) as u8).collect());
        TransitionPolynomial {
            coefficients: c,
            kind,
            sigma,
            tau,
        }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn eval(&self, rho: f64) -> f64 {
        horner(&self.coefficients, rho)
    }

    /// `S_sigma(0) - S_tau(1)` (or `S_tau(0)`), from the maps themselves.
    /// For left coincidences this is `(1 - rho)` times [`Self::eval`].
    pub fn witness_gap(&self, rho: f64) -> f64 {
        let spec = match IfsSpec::bernoulli_relaxed(rho, 0.5) {
            Ok(s) => s,
            Err(_) => return f64::NAN,
        };
        let right = match self.kind {
            TransitionKind::Crossing => 1.0,
            TransitionKind::LeftCoincidence => 0.0,
        };
        let a = spec.map_point(&self.sigma, 0.0).unwrap_or(f64::NAN);
        let b = spec.map_point(&self.tau, right).unwrap_or(f64::NAN);
        a - b
    }
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(i, &a)| i as f64 * a).collect()
}

/// Every difference vector in `{-1, 0, 1}^n`, lexicographically.
fn differences(n: usize) -> impl Iterator<Item = Vec<i8>> {
    let total = 3usize.pow(n as u32);
    (0..total).map(move |mut index| {
        let mut e = vec![0i8; n];
        for slot in e.iter_mut().rev() {
            *slot = (index % 3) as i8 - 1;
            index /= 3;
        }
        e
    })
}

/// Transition polynomials of level `n`: crossings for every family, plus
/// left coincidences when the weights are biased. Duplicate coefficient
/// vectors (up to sign) are dropped.
pub fn transition_polynomials(family: &BernoulliFamily, n: usize) -> Result<Vec<TransitionPolynomial>> {
    if n == 0 || n > MAX_LEVEL {
        return Err(Error::ParameterOutOfRange(format!("transition level must be in 1..={MAX_LEVEL}, got {n}")));
    }
    let mut kinds = vec![TransitionKind::Crossing];
    if !family.is_unbiased() {
        kinds.push(TransitionKind::LeftCoincidence);
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for kind in kinds {
        for e in differences(n) {
            if e.iter().all(|&x| x == 0) {
                continue;
            }
            // A left coincidence is symmetric in the pair; keep one orientation.
            if kind == TransitionKind::LeftCoincidence && e.iter().find(|&&x| x != 0) != Some(&1) {
                continue;
            }
            let poly = TransitionPolynomial::from_difference(&e, kind);
            let key: Vec<i64> = poly.coefficients.iter().map(|&c| c as i64).collect();
            let negated: Vec<i64> = key.iter().map(|c| -c).collect();
            if seen.contains(&negated) || !seen.insert(key) {
                continue;
            }
            out.push(poly);
        }
    }
    Ok(out)
}

/// Real roots of the polynomial (coefficients lowest degree first) strictly
/// inside `(lo, hi)`, ascending. Roots within `1e-12` of either end are
/// dropped.
pub fn isolate_roots(coefficients: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    if coefficients.iter().all(|&c| c == 0.0) || !(lo < hi) {
        return Vec::new();
    }
    let deriv = derivative(coefficients);
    let step = (hi - lo) / GRID_POINTS as f64;
    let xs: Vec<f64> = (0..=GRID_POINTS).map(|i| if i == GRID_POINTS { hi } else { lo + step * i as f64 }).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| horner(coefficients, x)).collect();
    let mut roots = Vec::new();
    for i in 0..GRID_POINTS {
        let (a, b, fa, fb) = (xs[i], xs[i + 1], ys[i], ys[i + 1]);
        if fa == 0.0 {
            roots.push(a);
            continue;
        }
        if fb == 0.0 {
            continue;
        }
        if fa.signum() != fb.signum() {
            roots.push(bisect(coefficients, a, b));
            continue;
        }
        // No sign change: look for a pair of close roots or a double root
        // around a critical point.
        let (da, db) = (horner(&deriv, a), horner(&deriv, b));
        if da.signum() != db.signum() && da != 0.0 && db != 0.0 {
            let c = bisect(&deriv, a, b);
            let fc = horner(coefficients, c);
            if fc == 0.0 || fc.abs() < ZERO_TOL {
                roots.push(c);
            } else if fc.signum() != fa.signum() {
                roots.push(bisect(coefficients, a, c));
                roots.push(bisect(coefficients, c, b));
            }
        }
    }
    if ys[GRID_POINTS] == 0.0 {
        roots.push(hi);
    }
    roots.retain(|&r| r > lo + ENDPOINT_EPS && r < hi - ENDPOINT_EPS);
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() < MERGE_FLAG_TOL);
    roots
}

/// Bisection on a sign change down to adjacent floats.
fn bisect(c: &[f64], mut a: f64, mut b: f64) -> f64 {
    let mut fa = horner(c, a);
    loop {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            return if horner(c, a).abs() <= horner(c, b).abs() { a } else { b };
        }
        let fm = horner(c, m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransitionRoot {
    pub rho: f64,
    pub kind: TransitionKind,
    pub sigma: Word,
    pub tau: Word,
    /// Roots of other polynomials within [`DEDUP_TOL`] but further than
    /// `1e-12` were folded into this one.
    pub merged_distinct: bool,
    /// Name of a known Pisot or Salem number whose reciprocal this is.
    pub label: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransitionSet {
    pub n: usize,
    pub range: (f64, f64),
    pub roots: Vec<TransitionRoot>,
}

impl TransitionSet {
    pub fn values(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.rho).collect()
    }
}

/// All transition points of level `n` strictly inside `(lo, hi)`, sorted and
/// deduplicated at [`DEDUP_TOL`].
pub fn transition_set(family: &BernoulliFamily, n: usize, lo: f64, hi: f64) -> Result<TransitionSet> {
    if !(0.0 < lo && lo < hi && hi < 1.0) {
        return Err(Error::ParameterOutOfRange(format!("range ({lo}, {hi}) must lie in (0, 1)")));
    }
    let polys = transition_polynomials(family, n)?;
    let mut found: Vec<(f64, usize)> = polys
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, p)| isolate_roots(&p.coefficients, lo, hi).into_iter().map(move |r| (r, i)))
        .collect();
    found.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut roots: Vec<TransitionRoot> = Vec::new();
    let mut cluster_start = f64::NAN;
    for (rho, index) in found {
        if let Some(last) = roots.last_mut() {
            if rho - cluster_start <= DEDUP_TOL {
                if rho - last.rho > MERGE_FLAG_TOL {
                    last.merged_distinct = true;
                }
                continue;
            }
        }
        cluster_start = rho;
        let p = &polys[index];
        roots.push(TransitionRoot {
            rho,
            kind: p.kind,
            sigma: p.sigma.clone(),
            tau: p.tau.clone(),
            merged_distinct: false,
            label: algebraic::known_label(rho, LABEL_TOL),
        });
    }
    Ok(TransitionSet {
        n,
        range: (lo, hi),
        roots,
    })
}

/// Quantity swept across the constancy cells of a range of `rho`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SweptQuantity {
    SupCoverage,
    MinCoverage(Interval),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstancyCell {
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransitionValue {
    pub rho: f64,
    /// Value of the merged profile: coincident endpoints become one
    /// breakpoint and only open cells count.
    pub value: f64,
    /// Value when images that only touch at the transition are counted
    /// together.
    pub touching_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstancySweep {
    pub n: usize,
    pub cells: Vec<ConstancyCell>,
    pub transitions: Vec<TransitionValue>,
}

/// Roots in `(lo, hi)` at which the arrangement of the level-`n` images of
/// `I = [a, b]` can change: `S_sigma(a) = S_tau(b)`, `S_sigma(a) = S_tau(a)`
/// for biased weights, and `S_sigma(c) = c'` for `c, c'` in `{a, b}`.
fn interval_transition_roots(family: &BernoulliFamily, n: usize, interval: &Interval, lo: f64, hi: f64) -> Result<Vec<f64>> {
    if n > MAX_LEVEL {
        return Err(Error::ParameterOutOfRange(format!("transition level must be <= {MAX_LEVEL}, got {n}")));
    }
    let (a, b) = (interval.lo, interval.hi);
    let mut polys: Vec<Vec<f64>> = Vec::new();
    for e in differences(n) {
        let mut c = vec![0.0; n + 1];
        for (i, &ei) in e.iter().enumerate() {
            c[i] += ei as f64;
            c[i + 1] -= ei as f64;
        }
        let mut crossing = c.clone();
        crossing[n] += a - b;
        polys.push(crossing);
        if !family.is_unbiased() && e.iter().any(|&x| x != 0) {
            polys.push(c);
        }
        if e.iter().all(|&x| x >= 0) {
            let mut base = vec![0.0; n + 1];
            for (i, &ei) in e.iter().enumerate() {
                base[i] += ei as f64;
                base[i + 1] -= ei as f64;
            }
            for c0 in [a, b] {
                for c1 in [a, b] {
                    let mut p = base.clone();
                    p[n] += c0;
                    p[0] -= c1;
                    polys.push(p);
                }
            }
        }
    }
    let mut roots: Vec<f64> = polys.par_iter().flat_map_iter(|p| isolate_roots(p, lo, hi)).collect();
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|x, y| (*x - *y).abs() <= DEDUP_TOL);
    Ok(roots)
}

fn evaluate(family: &BernoulliFamily, rho: f64, n: usize, quantity: &SweptQuantity) -> Result<f64> {
    let spec = family.at(rho)?;
    match quantity {
        SweptQuantity::SupCoverage => coverage::sup_coverage(&spec, n).map(|s| s.value),
        SweptQuantity::MinCoverage(interval) => coverage::min_coverage(&spec, interval, n),
    }
}

/// Value with touching images counted together; only differs from
/// [`evaluate`] at transition points.
fn evaluate_touching(family: &BernoulliFamily, rho: f64, n: usize, quantity: &SweptQuantity) -> Result<f64> {
    match quantity {
        SweptQuantity::SupCoverage => coverage::sup_coverage_closed(&family.at(rho)?, n),
        SweptQuantity::MinCoverage(_) => evaluate(family, rho, n, quantity),
    }
}

/// Splits `(lo, hi)` at the level-`n` transition points and evaluates the
/// quantity on each cell (checked at the 1/4, 1/2 and 3/4 points) and at
/// each transition point.
pub fn constancy_sweep(family: &BernoulliFamily, n: usize, lo: f64, hi: f64, quantity: SweptQuantity) -> Result<ConstancySweep> {
    let roots = match &quantity {
        SweptQuantity::SupCoverage => transition_set(family, n.max(1), lo, hi)?.values(),
        SweptQuantity::MinCoverage(interval) => interval_transition_roots(family, n, interval, lo, hi)?,
    };
    let mut edges = Vec::with_capacity(roots.len() + 2);
    edges.push(lo);
    edges.extend(&roots);
    edges.push(hi);
    let cells = edges
        .par_windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let mut values = [0.0; 3];
            for (slot, t) in values.iter_mut().zip([0.25, 0.5, 0.75]) {
                *slot = evaluate(family, a + t * (b - a), n, &quantity)?;
            }
            if (values[0] - values[1]).abs() > CONSTANCY_TOL || (values[2] - values[1]).abs() > CONSTANCY_TOL {
                return Err(Error::NotConstant { lo: a, hi: b, values });
            }
            Ok(ConstancyCell {
                lo: a,
                hi: b,
                value: values[1],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let transitions = roots
        .par_iter()
        .map(|&rho| {
            Ok(TransitionValue {
                rho,
                value: evaluate(family, rho, n, &quantity)?,
                touching_value: evaluate_touching(family, rho, n, &quantity)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConstancySweep { n, cells, transitions })
}

/// Where the minimum of the best lower bound over a range is attained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RangeMinimum {
    pub value: f64,
    /// Transition point or range end attaining the minimum, or the left end
    /// of the constancy cell whose infimum it is.
    pub rho: f64,
    pub at_point: bool,
    /// Smallest value at a transition point or range end when images that
    /// only touch there are counted together, with where it occurs.
    pub touching_value: f64,
    pub touching_rho: f64,
}

/// `max_{n <= n_max} log s_n / (n log rho)` with the level-`n` suprema taken
/// at `rho_sup` and the log at `rho_log`, for the merged profile and with
/// touching images counted together.
fn best_lower(family: &BernoulliFamily, rho_sup: f64, rho_log: f64, n_max: usize) -> Result<(f64, f64)> {
    let spec = family.at(rho_sup)?;
    let (mut merged, mut touching) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for n in 1..=n_max {
        let profile = coverage::level_profile(&spec, &Interval::unit(), n)?;
        let open = profile.max_cell().map_or(1.0, |c| c.weight);
        let denominator = n as f64 * rho_log.ln();
        merged = merged.max(open.ln() / denominator);
        touching = touching.max(profile.max_closed().ln() / denominator);
    }
    Ok((merged, touching))
}

fn argmin(values: impl Iterator<Item = (f64, f64)>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NAN), |a, b| if b.0 < a.0 { b } else { a })
}

/// Minimum over `[lo, hi]` of the best coverage lower bound with
/// `n <= n_max`. `roots` must hold the level-`n_max` transition points in
/// `(lo, hi)`.
///
/// On each constancy cell the suprema are fixed and the bound increases with
/// `rho`, so its infimum is the cell value with `log rho` taken at the left
/// end. Transition points and the range ends use the merged profile.
pub fn lower_bound_range_minimum(family: &BernoulliFamily, lo: f64, hi: f64, n_max: usize, roots: &[f64]) -> Result<RangeMinimum> {
    if n_max == 0 {
        return Err(Error::ParameterOutOfRange("n_max must be >= 1".into()));
    }
    let mut points = Vec::with_capacity(roots.len() + 2);
    points.push(lo);
    points.extend(roots.iter().copied().filter(|&r| r > lo && r < hi));
    points.push(hi);

    let at_points: Vec<(f64, f64, f64)> = points
        .par_iter()
        .map(|&rho| {
            let (merged, touching) = best_lower(family, rho, rho, n_max)?;
            Ok((merged, touching, rho))
        })
        .collect::<Result<_>>()?;
    let on_cells: Vec<(f64, f64)> = points
        .par_windows(2)
        .map(|w| Ok((best_lower(family, 0.5 * (w[0] + w[1]), w[0], n_max)?.0, w[0])))
        .collect::<Result<_>>()?;

    let (point_value, point_rho) = argmin(at_points.iter().map(|&(v, _, r)| (v, r)));
    let (cell_value, cell_rho) = argmin(on_cells.into_iter());
    let (touching_value, touching_rho) = argmin(at_points.iter().map(|&(_, t, r)| (t, r)));
    let (value, rho, at_point) = if point_value < cell_value {
        (point_value, point_rho, true)
    } else {
        (cell_value, cell_rho, false)
    };
    Ok(RangeMinimum {
        value,
        rho,
        at_point,
        touching_value,
        touching_rho,
    })
}

/// [`lower_bound_range_minimum`] computing its own transition points.
pub fn lower_bound_range_minimum_auto(family: &BernoulliFamily, lo: f64, hi: f64, n_max: usize) -> Result<RangeMinimum> {
    let roots = transition_set(family, n_max, lo, hi)?.values();
    lower_bound_range_minimum(family, lo, hi, n_max, &roots)
}

/// Witness cell of the level-`n` supremum at `rho`, for reporting.
pub fn sup_witness(family: &BernoulliFamily, rho: f64, n: usize) -> Result<Cell> {
    Ok(coverage::sup_coverage(&family.at(rho)?, n)?.witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots_of(family: &BernoulliFamily, n: usize, lo: f64, hi: f64) -> Vec<f64> {
        transition_set(family, n, lo, hi).unwrap().values()
    }

    #[test]
    fn level_one_and_two() {
        let u = BernoulliFamily::unbiased();
        let polys = transition_polynomials(&u, 1).unwrap();
        let p = polys.iter().find(|p| p.sigma == Word::new(vec![1]) && p.tau == Word::new(vec![0])).unwrap();
        assert_eq!(p.coefficients, vec![1.0, -2.0]);
        assert!(roots_of(&u, 1, 0.5, 0.99).is_empty());
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        let r2 = roots_of(&u, 2, 0.5, 0.99);
        assert!(r2.iter().any(|r| (r - golden).abs() < 1e-9));
        let p = transition_polynomials(&u, 2)
            .unwrap()
            .into_iter()
            .find(|p| p.sigma == Word::new(vec![1, 0]) && p.tau == Word::new(vec![0, 0]))
            .unwrap();
        assert_eq!(p.coefficients, vec![1.0, -1.0, -1.0]);
    }

    #[test]
    fn polynomial_count_at_level_four() {
        // Distinct difference vectors give distinct polynomials; only the
        // zero vector (sigma = tau) is excluded.
        let polys = transition_polynomials(&BernoulliFamily::unbiased(), 4).unwrap();
        assert_eq!(polys.len(), 80);
        let biased = transition_polynomials(&BernoulliFamily { p0: 0.3 }, 4).unwrap();
        assert!(biased.len() > 80);
        assert!(transition_polynomials(&BernoulliFamily::unbiased(), 13).is_err());
    }

    #[test]
    fn polynomial_matches_maps() {
        let polys = transition_polynomials(&BernoulliFamily { p0: 0.3 }, 5).unwrap();
        for p in polys.iter().step_by(7) {
            for rho in [0.5, 0.77, 0.91] {
                let factor = match p.kind {
                    TransitionKind::Crossing => 1.0,
                    TransitionKind::LeftCoincidence => 1.0 - rho,
                };
                assert!((factor * p.eval(rho) - p.witness_gap(rho)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn isolate_examples() {
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        let r = isolate_roots(&[-1.0, 1.0, 1.0], 0.5, 1.0);
        assert_eq!(r.len(), 1);
        assert!((r[0] - golden).abs() < 1e-13);
        assert!(isolate_roots(&[1.0, -2.0], 0.5, 1.0).is_empty());
        let r = isolate_roots(&[-1.0, 0.0, 1.0, 1.0], 0.5, 1.0);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 0.754877666).abs() < 1e-9);
    }

    #[test]
    fn isolate_double_and_close_roots() {
        // (x - 0.7)^2 and (x - 0.7)(x - 0.70001).
        let r = isolate_roots(&[0.49, -1.4, 1.0], 0.5, 1.0);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 0.7).abs() < 1e-7);
        let r = isolate_roots(&[0.7 * 0.70001, -1.40001, 1.0], 0.5, 1.0);
        assert_eq!(r.len(), 2);
        assert!((r[0] - 0.7).abs() < 1e-12 && (r[1] - 0.70001).abs() < 1e-12);
    }

    #[test]
    fn roots_have_witnesses() {
        let set = transition_set(&BernoulliFamily::unbiased(), 6, 0.5, 0.9).unwrap();
        assert!(set.roots.windows(2).all(|w| w[0].rho < w[1].rho));
        for root in &set.roots {
            let spec = IfsSpec::bernoulli(root.rho, 0.5).unwrap();
            let gap = spec.map_point(&root.sigma, 0.0).unwrap() - spec.map_point(&root.tau, 1.0).unwrap();
            assert!(gap.abs() <= 1e-9, "{root:?}");
        }
    }

    #[test]
    fn lower_levels_are_contained() {
        let u = BernoulliFamily::unbiased();
        let r5 = roots_of(&u, 5, 0.5, 0.95);
        for n in 1..5 {
            for r in roots_of(&u, n, 0.5, 0.95) {
                assert!(r5.iter().any(|x| (x - r).abs() < 1e-10));
            }
        }
    }

    #[test]
    fn known_numbers_are_labelled() {
        let set = transition_set(&BernoulliFamily::unbiased(), 3, 0.5, 0.99).unwrap();
        let plastic = set.roots.iter().find(|r| (r.rho - 0.754877666).abs() < 1e-8).unwrap();
        assert_eq!(plastic.label, Some("smallest Pisot (plastic) number"));
    }

    /// Sign changes of every level-`n` polynomial on a uniform grid.
    fn grid_oracle(n: usize, lo: f64, hi: f64, points: usize) -> Vec<f64> {
        let polys = transition_polynomials(&BernoulliFamily::unbiased(), n).unwrap();
        let h = (hi - lo) / points as f64;
        let mut out: Vec<f64> = Vec::new();
        for p in &polys {
            let mut prev = p.eval(lo);
            for i in 1..=points {
                let x = lo + h * i as f64;
                let y = p.eval(x);
                if prev * y < 0.0 {
                    out.push(x - 0.5 * h);
                }
                prev = y;
            }
        }
        out.sort_by(f64::total_cmp);
        out.dedup_by(|a, b| (*a - *b).abs() < 2.0 * h);
        out
    }

    #[test]
    fn matches_grid_oracle_up_to_level_four() {
        let (lo, hi) = (0.5, 0.99);
        for n in 1..=4 {
            let oracle = grid_oracle(n, lo, hi, 1_000_000);
            let found = roots_of(&BernoulliFamily::unbiased(), n, lo, hi);
            assert_eq!(oracle.len(), found.len(), "n = {n}");
            for (a, b) in oracle.iter().zip(&found) {
                assert!((a - b).abs() < 1e-6, "n = {n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn sup_constant_near_point_eight() {
        let sweep = constancy_sweep(&BernoulliFamily::unbiased(), 4, 0.78, 0.82, SweptQuantity::SupCoverage).unwrap();
        let cell = sweep.cells.iter().find(|c| c.lo < 0.8 && 0.8 < c.hi).unwrap();
        assert!((cell.value - 14.0 / 16.0).abs() < 1e-12);
    }

    #[test]
    fn sweep_without_roots_is_one_cell() {
        let sweep = constancy_sweep(&BernoulliFamily::unbiased(), 2, 0.52, 0.6, SweptQuantity::SupCoverage).unwrap();
        assert_eq!(sweep.cells.len(), 1);
        assert!(sweep.transitions.is_empty());
    }

    #[test]
    fn min_coverage_sweep_is_constant_on_cells() {
        let interval = Interval::open(0.3, 0.7);
        let sweep = constancy_sweep(&BernoulliFamily::unbiased(), 4, 0.78, 0.82, SweptQuantity::MinCoverage(interval)).unwrap();
        let cell = sweep.cells.iter().find(|c| c.lo < 0.8 && 0.8 < c.hi).unwrap();
        assert!((cell.value - 3.0 / 16.0).abs() < 1e-12);
        let biased = BernoulliFamily { p0: 0.3 };
        constancy_sweep(&biased, 3, 0.6, 0.9, SweptQuantity::SupCoverage).unwrap();
        constancy_sweep(&biased, 3, 0.6, 0.9, SweptQuantity::MinCoverage(interval)).unwrap();
    }

    #[test]
    fn touching_values_do_not_exceed_merged_ones() {
        let sweep = constancy_sweep(&BernoulliFamily::unbiased(), 5, 0.6, 0.9, SweptQuantity::SupCoverage).unwrap();
        assert!(!sweep.transitions.is_empty());
        assert!(sweep.transitions.iter().all(|t| t.touching_value >= t.value));
        assert!(sweep.transitions.iter().any(|t| t.touching_value > t.value));
    }

    #[test]
    fn range_minimum_is_below_grid_values() {
        let u = BernoulliFamily::unbiased();
        let m = lower_bound_range_minimum_auto(&u, 0.7, 0.75, 6).unwrap();
        for i in 0..=50 {
            let rho = 0.7 + 0.05 * i as f64 / 50.0;
            let v = best_lower(&u, rho, rho, 6).unwrap().0;
            assert!(m.value <= v + 1e-12, "rho = {rho}");
        }
    }
}
