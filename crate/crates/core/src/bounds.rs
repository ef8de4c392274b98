//! Closed-form bounds on local dimensions.
//!
//! Invalid results are not errors: sweeps plot only the valid segments, so
//! every bound comes back as an [`AnalyticBound`] carrying either a value or
//! a machine-readable [`InvalidReason`].

use serde::Serialize;

use crate::ifs::{IfsSpec, PROB_TOL};

/// `(sqrt(5) - 1) / 2`, the reciprocal of the golden ratio.
pub const GOLDEN_THRESHOLD: f64 = 0.618_033_988_749_894_8;

/// Largest Erdős index considered; beyond it the bound is vacuous.
pub const ERDOS_K_CAP: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AnalyticMethod {
    DimAtZero,
    ErdosUpper,
    XiBiasedUpper,
    BiasedCorollary,
}

impl AnalyticMethod {
    pub fn name(self) -> &'static str {
        match self {
            AnalyticMethod::DimAtZero => "DimAtZero",
            AnalyticMethod::ErdosUpper => "ErdosUpper",
            AnalyticMethod::XiBiasedUpper => "XiBiasedUpper",
            AnalyticMethod::BiasedCorollary => "BiasedCorollary",
        }
    }
}

/// Why a bound's hypotheses fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InvalidReason {
    /// `rho <= (sqrt 5 - 1)/2`.
    BelowGoldenThreshold,
    /// The Erdős index exceeds [`ERDOS_K_CAP`].
    ErdosIndexCapped,
    /// The bound is stated for the unbiased Bernoulli convolution only.
    NotUnbiasedBernoulli,
    /// The bound is stated for two-map systems only.
    NotBernoulli,
    NoStrictOverlap,
    /// `p_0` is not strictly smaller than every other probability.
    P0NotStrictlyMinimal,
}

impl InvalidReason {
    pub fn code(self) -> &'static str {
        match self {
            InvalidReason::BelowGoldenThreshold => "below_golden_threshold",
            InvalidReason::ErdosIndexCapped => "erdos_index_capped",
            InvalidReason::NotUnbiasedBernoulli => "not_unbiased_bernoulli",
            InvalidReason::NotBernoulli => "not_bernoulli",
            InvalidReason::NoStrictOverlap => "no_strict_overlap",
            InvalidReason::P0NotStrictlyMinimal => "p0_not_strictly_minimal",
        }
    }
}

/// Auxiliary quantities a bound was computed from.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct BoundParams {
    /// Erdős index `k`.
    pub k: Option<u32>,
    pub xi: Option<f64>,
    /// Smallest `J` with `rho^J < xi`.
    pub j: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyticBound {
    pub method: AnalyticMethod,
    pub value: Option<f64>,
    pub params: BoundParams,
    pub reason: Option<InvalidReason>,
}

impl AnalyticBound {
    fn valid(method: AnalyticMethod, value: f64, params: BoundParams) -> Self {
        debug_assert!(value.is_finite());
        AnalyticBound {
            method,
            value: Some(value),
            params,
            reason: None,
        }
    }

    fn invalid(method: AnalyticMethod, reason: InvalidReason) -> Self {
        AnalyticBound {
            method,
            value: None,
            params: BoundParams::default(),
            reason: Some(reason),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.value.is_some()
    }
}

/// Local dimension at 0: `log p_0 / log rho`.
pub fn dim_at_zero(spec: &IfsSpec) -> f64 {
    spec.probs()[0].ln() / spec.rho().ln()
}

/// Smallest `k >= 3` with `rho^2 + ... + rho^k > 1`.
pub fn erdos_k(rho: f64) -> Result<u32, InvalidReason> {
    if !(rho > GOLDEN_THRESHOLD && rho < 1.0) {
        return Err(InvalidReason::BelowGoldenThreshold);
    }
    let mut sum = 0.0;
    let mut power = rho;
    for k in 2..=ERDOS_K_CAP {
        power *= rho;
        sum += power;
        if k >= 3 && sum > 1.0 {
            return Ok(k);
        }
    }
    Err(InvalidReason::ErdosIndexCapped)
}

/// `(1 - 1/k) log 2 / |log rho|` for the unbiased Bernoulli convolution.
pub fn erdos_upper_bound(rho: f64) -> AnalyticBound {
    match erdos_k(rho) {
        Ok(k) => {
            let value = (1.0 - 1.0 / k as f64) * std::f64::consts::LN_2 / rho.ln().abs();
            let params = BoundParams {
                k: Some(k),
                ..BoundParams::default()
            };
            AnalyticBound::valid(AnalyticMethod::ErdosUpper, value, params)
        }
        Err(reason) => AnalyticBound::invalid(AnalyticMethod::ErdosUpper, reason),
    }
}

/// [`erdos_upper_bound`] gated on the spec being the unbiased Bernoulli
/// convolution.
pub fn erdos_upper_bound_for(spec: &IfsSpec) -> AnalyticBound {
    let p = spec.probs();
    if spec.m() != 1 || (p[0] - p[1]).abs() > PROB_TOL {
        return AnalyticBound::invalid(AnalyticMethod::ErdosUpper, InvalidReason::NotUnbiasedBernoulli);
    }
    erdos_upper_bound(spec.rho())
}

/// Smallest `J >= 1` with `rho^J < xi`.
pub fn window_length(rho: f64, xi: f64) -> u32 {
    let mut j = 1;
    let mut power = rho;
    while power >= xi {
        power *= rho;
        j += 1;
    }
    j
}

/// Upper bound on `sup_{x != 0}` of the upper local dimension for measures
/// with strict overlap and `p_0` the unique minimal probability:
///
/// `[log(min_{j!=0} p_j) + (log xi / log rho - 1) log p_0] / log xi`
/// with `xi = min_j (d_{j-1} + rho - d_j)`.
pub fn xi_biased_upper_bound(spec: &IfsSpec) -> AnalyticBound {
    let method = AnalyticMethod::XiBiasedUpper;
    if !spec.strict_overlap() {
        return AnalyticBound::invalid(method, InvalidReason::NoStrictOverlap);
    }
    let p = spec.probs();
    let p0 = p[0];
    let p_min = p[1..].iter().copied().fold(f64::INFINITY, f64::min);
    if p0 >= p_min - PROB_TOL {
        return AnalyticBound::invalid(method, InvalidReason::P0NotStrictlyMinimal);
    }
    let rho = spec.rho();
    let xi = spec.overlap_slack().min(rho);
    let value = (p_min.ln() + (xi.ln() / rho.ln() - 1.0) * p0.ln()) / xi.ln();
    debug_assert!(value < dim_at_zero(spec));
    let params = BoundParams {
        xi: Some(xi),
        j: Some(window_length(rho, xi)),
        ..BoundParams::default()
    };
    AnalyticBound::valid(method, value, params)
}

/// The biased Bernoulli special case with `xi = rho^3`:
/// `(2/3 log p0 + 1/3 log(1 - p0)) / log rho`.
pub fn biased_corollary_bound(rho: f64, p0: f64) -> AnalyticBound {
    let method = AnalyticMethod::BiasedCorollary;
    if !(rho > GOLDEN_THRESHOLD && rho < 1.0) {
        return AnalyticBound::invalid(method, InvalidReason::BelowGoldenThreshold);
    }
    if !(p0 > 0.0 && p0 < 1.0 - p0 - PROB_TOL) {
        return AnalyticBound::invalid(method, InvalidReason::P0NotStrictlyMinimal);
    }
    let value = (2.0 / 3.0 * p0.ln() + 1.0 / 3.0 * (1.0 - p0).ln()) / rho.ln();
    let params = BoundParams {
        xi: Some(rho.powi(3)),
        j: Some(3),
        ..BoundParams::default()
    };
    AnalyticBound::valid(method, value, params)
}

/// [`biased_corollary_bound`] gated on the spec being a two-map system.
pub fn biased_corollary_bound_for(spec: &IfsSpec) -> AnalyticBound {
    if spec.m() != 1 {
        return AnalyticBound::invalid(AnalyticMethod::BiasedCorollary, InvalidReason::NotBernoulli);
    }
    biased_corollary_bound(spec.rho(), spec.probs()[0])
}
