//! Digit expansions `x = sum_i d_{a_i} rho^(i-1)` that keep many nonzero
//! (or many middle) digits.
//!
//! Both algorithms run on the rescaled orbit `y_{k+1} = (y_k - d_{a_k}) / rho`,
//! which always stays in `[0, 1]`. Rounding errors made at step `k` are
//! damped by `rho^k` when mapped back, so `x` stays inside every prefix image
//! `S_{a_1..a_n}[0, 1]` up to a few ulps even for very long expansions.

use serde::Serialize;

use crate::bounds::window_length;
use crate::ifs::IfsSpec;
use crate::{Error, Result};

/// Multiplier applied to the largest admissible `xi` so that the strict
/// inequalities it must satisfy survive rounding.
pub const XI_SAFETY: f64 = 1.0 - 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExpansionKind {
    /// Lazy expansion: digit 0 whenever possible.
    Lazy,
    /// Left/middle/right expansion: a middle digit whenever possible.
    Lmr,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Expansion {
    pub digits: Vec<u8>,
    pub xi: f64,
    /// Smallest `J` with `rho^J < xi`.
    pub window: u32,
    pub kind: ExpansionKind,
}

impl Expansion {
    /// Digits not counted by [`nonzero_density`]: `{0}` for lazy expansions,
    /// `{0, m}` for L/M/R expansions.
    pub fn excluded_digits(&self, m: usize) -> Vec<u8> {
        match self.kind {
            ExpansionKind::Lazy => vec![0],
            ExpansionKind::Lmr => vec![0, m as u8],
        }
    }

    pub fn digit_string(&self) -> String {
        crate::Word::new(self.digits.clone()).to_string()
    }
}

/// `xi = min_j (d_{j-1} + rho - d_j)`, shrunk by [`XI_SAFETY`].
pub fn choose_xi_lazy(spec: &IfsSpec) -> Result<f64> {
    if !spec.strict_overlap() {
        return Err(Error::Hypothesis("lazy expansion needs strict overlap".into()));
    }
    Ok(spec.overlap_slack() * XI_SAFETY)
}

/// Largest `xi` with
/// 1. `d_j + rho - xi > d_{j+1} + xi` for every `j`,
/// 2. `rho (d_{m-1} + rho - xi) > d_1 + xi`,
/// 3. `d_m + rho (d_1 + xi) < d_{m-1} + rho - xi`,
///
/// shrunk by [`XI_SAFETY`]. Each condition is linear in `xi`.
pub fn choose_xi_lmr(spec: &IfsSpec) -> Result<f64> {
    if !spec.unbiased_overlap()? {
        return Err(Error::Hypothesis(
            "L/M/R expansion needs the unbiased overlap conditions".into(),
        ));
    }
    let (rho, d, m) = (spec.rho(), spec.digits(), spec.m());
    let pairwise = d
        .windows(2)
        .map(|w| (w[0] + rho - w[1]) / 2.0)
        .fold(f64::INFINITY, f64::min);
    let second = (rho * (d[m - 1] + rho) - d[1]) / (1.0 + rho);
    let third = (d[m - 1] + rho - d[m] - rho * d[1]) / (1.0 + rho);
    let xi = pairwise.min(second).min(third);
    if xi <= 0.0 {
        return Err(Error::Hypothesis(format!("no positive xi (slack {xi})")));
    }
    Ok(xi * XI_SAFETY)
}

/// Lazy expansion of `x in (0, 1]`.
///
/// With `y` the rescaled point, the digit is 0 on `[0, d_1 + xi]`, `j` on
/// `(d_j + xi, d_{j+1} + xi]` and `m` on `(d_m + xi, 1]`.
pub fn lazy_expansion(spec: &IfsSpec, x: f64, len: usize) -> Result<Expansion> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::ParameterOutOfRange(format!("x = {x} is not in (0, 1]")));
    }
    let xi = choose_xi_lazy(spec)?;
    let (rho, d, m) = (spec.rho(), spec.digits(), spec.m());
    let mut y = x;
    let mut digits = Vec::with_capacity(len);
    for _ in 0..len {
        let a = (0..m).find(|&j| y <= d[j + 1] + xi).unwrap_or(m);
        digits.push(a as u8);
        y = ((y - d[a]) / rho).clamp(0.0, 1.0);
    }
    Ok(Expansion {
        digits,
        xi,
        window: window_length(rho, xi),
        kind: ExpansionKind::Lazy,
    })
}

/// L/M/R expansion of `x in (0, 1)`.
///
/// Regions: `L = [0, d_1 + xi)`, `M_j = [d_j + xi, d_j + rho - xi]` for
/// `j = 1..m-1` and `R = (d_{m-1} + rho - xi, 1]`. A middle region wins over
/// `L` and `R`; overlapping middle regions resolve to the smallest `j`.
pub fn lmr_expansion(spec: &IfsSpec, x: f64, len: usize) -> Result<Expansion> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::ParameterOutOfRange(format!("x = {x} is not in (0, 1)")));
    }
    let xi = choose_xi_lmr(spec)?;
    let (rho, d, m) = (spec.rho(), spec.digits(), spec.m());
    let mut y = x;
    let mut digits = Vec::with_capacity(len);
    for _ in 0..len {
        let a = (1..m)
            .find(|&j| y >= d[j] + xi && y <= d[j] + rho - xi)
            .unwrap_or(if y < d[1] + xi { 0 } else { m });
        digits.push(a as u8);
        y = ((y - d[a]) / rho).clamp(0.0, 1.0);
    }
    Ok(Expansion {
        digits,
        xi,
        window: window_length(rho, xi),
        kind: ExpansionKind::Lmr,
    })
}

/// Fraction of digits not in `excluded`.
pub fn nonzero_density(expansion: &Expansion, excluded: &[u8]) -> f64 {
    if expansion.digits.is_empty() {
        return 0.0;
    }
    let kept = expansion.digits.iter().filter(|d| !excluded.contains(d)).count();
    kept as f64 / expansion.digits.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::{Interval, Word};

    fn uniform(rho: f64, m: usize) -> IfsSpec {
        let mut probs = vec![0.2 / 2.0; m + 1];
        let mid = 0.8 / (m - 1) as f64;
        for p in probs.iter_mut().take(m).skip(1) {
            *p = mid;
        }
        IfsSpec::uniform_digits(rho, probs).unwrap()
    }

    #[test]
    fn xi_lazy_examples() {
        let xi = choose_xi_lazy(&IfsSpec::bernoulli(0.7, 0.5).unwrap()).unwrap();
        assert!((xi - 0.4).abs() < 1e-9 && xi < 0.4);
        let xi = choose_xi_lazy(&IfsSpec::bernoulli(0.8, 0.5).unwrap()).unwrap();
        assert!((xi - 0.6).abs() < 1e-9 && xi < 0.6);
        let base = IfsSpec::bernoulli_relaxed(1.0 / 3.0, 0.5).unwrap();
        assert!(choose_xi_lazy(&IfsSpec::convolution(&base, 2).unwrap()).is_err());
    }

    /// Linear-program oracle: scan xi upward and keep the last value that
    /// satisfies all three strict inequalities.
    fn xi_lmr_oracle(spec: &IfsSpec) -> f64 {
        let (rho, d, m) = (spec.rho(), spec.digits(), spec.m());
        let ok = |xi: f64| {
            (0..m).all(|j| d[j] + rho - xi > d[j + 1] + xi)
                && rho * (d[m - 1] + rho - xi) > d[1] + xi
                && d[m] + rho * (d[1] + xi) < d[m - 1] + rho - xi
        };
        let mut best = 0.0;
        let steps = 1_000_000;
        for i in 1..steps {
            let xi = rho * i as f64 / steps as f64;
            if ok(xi) {
                best = xi;
            } else {
                break;
            }
        }
        best
    }

    #[test]
    fn xi_lmr_examples() {
        for (rho, m) in [(0.5, 2), (0.5, 3)] {
            let spec = uniform(rho, m);
            let xi = choose_xi_lmr(&spec).unwrap();
            let oracle = xi_lmr_oracle(&spec);
            assert!(xi > 0.0 && (xi - oracle).abs() < 2e-6, "m = {m}: {xi} vs {oracle}");
        }
        let boundary = uniform(2f64.sqrt() - 1.0, 2);
        assert!(choose_xi_lmr(&boundary).is_err());
    }

    #[test]
    fn lazy_right_endpoint_is_all_top_digits() {
        let spec = IfsSpec::bernoulli(0.7, 0.4).unwrap();
        let e = lazy_expansion(&spec, 1.0, 50).unwrap();
        assert!(e.digits.iter().all(|&a| a == 1));
    }

    #[test]
    fn lazy_half_has_no_three_zero_run_after_first_one() {
        let spec = IfsSpec::bernoulli(0.7, 0.4).unwrap();
        let e = lazy_expansion(&spec, 0.5, 20).unwrap();
        assert_eq!(e.window, 3);
        let first = e.digits.iter().position(|&a| a != 0).unwrap();
        for w in e.digits[first..].windows(3) {
            assert!(w.iter().any(|&a| a != 0), "{}", e.digit_string());
        }
        // Frozen digit string for the record.
        assert_eq!(e.digit_string(), "01011011111111011101");
    }

    #[test]
    fn lazy_first_digit_boundary() {
        let spec = IfsSpec::bernoulli(0.7, 0.4).unwrap();
        let xi = choose_xi_lazy(&spec).unwrap();
        let edge = spec.digits()[1] + xi;
        assert_eq!(lazy_expansion(&spec, edge, 1).unwrap().digits, vec![0]);
        assert_eq!(lazy_expansion(&spec, edge + 1e-9, 1).unwrap().digits, vec![1]);
    }

    #[test]
    fn lazy_rejects_out_of_range() {
        let spec = IfsSpec::bernoulli(0.7, 0.4).unwrap();
        assert!(lazy_expansion(&spec, 0.0, 5).is_err());
        assert!(lazy_expansion(&spec, 1.2, 5).is_err());
    }

    #[test]
    fn lmr_examples() {
        let spec = uniform(0.5, 2);
        let xi = choose_xi_lmr(&spec).unwrap();
        let d1 = spec.digits()[1];
        assert!(0.5 >= d1 + xi && 0.5 <= d1 + 0.5 - xi);
        let e = lmr_expansion(&spec, 0.5, 20).unwrap();
        assert_eq!(e.digits[0], 1);

        let e = lmr_expansion(&spec, 1e-9, 40).unwrap();
        let zeros = e.digits.iter().take_while(|&&a| a == 0).count();
        assert!(zeros >= 20, "{}", e.digit_string());
        assert!(e.digits[zeros..].contains(&1));

        assert!(lmr_expansion(&spec, 1.0, 5).is_err());
    }

    #[test]
    fn density_examples() {
        let mk = |digits: Vec<u8>| Expansion {
            digits,
            xi: 0.1,
            window: 1,
            kind: ExpansionKind::Lazy,
        };
        assert_eq!(nonzero_density(&mk(vec![0; 12]), &[0]), 0.0);
        let periodic: Vec<u8> = (0..999).map(|i| u8::from(i % 3 == 1)).collect();
        assert!((nonzero_density(&mk(periodic), &[0]) - 1.0 / 3.0).abs() < 1e-15);

        let spec = IfsSpec::bernoulli(0.7, 0.4).unwrap();
        let e = lazy_expansion(&spec, 0.5, 10_000).unwrap();
        assert!(nonzero_density(&e, &[0]) >= 1.0 / 3.0 - 0.01);
    }

    #[test]
    fn prefixes_contain_x_and_reconstruct_it() {
        let spec = IfsSpec::bernoulli(0.7, 0.4).unwrap();
        let x = 0.318_309_886;
        let e = lazy_expansion(&spec, x, 300).unwrap();
        let mut partial = 0.0;
        let mut scale = 1.0;
        for (n, &a) in e.digits.iter().enumerate() {
            partial += spec.digits()[a as usize] * scale;
            scale *= spec.rho();
            assert!(x - partial >= -1e-12 && x - partial <= scale + 1e-12, "n = {}", n + 1);
            if n % 37 == 0 {
                let img = spec
                    .map_interval(&Word::new(e.digits[..=n].to_vec()), &Interval::unit())
                    .unwrap();
                assert!(img.contains(x, 1e-10));
            }
        }
    }
}
