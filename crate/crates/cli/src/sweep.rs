use locdim_core::algebraic::{certify_rho, IntPolynomial};
use locdim_core::bounds::{
    biased_corollary_bound_for, dim_at_zero, erdos_upper_bound_for, xi_biased_upper_bound, AnalyticBound,
};
use locdim_core::coverage::{best_lower_bound, upper_bound_with, DEFAULT_MAX_DEPTH, DEFAULT_MAX_WORDS};
use locdim_core::transition::{transition_set, MAX_LEVEL};
use locdim_core::IfsSpec;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::SweepConfig;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Method {
    DimAtZero,
    ErdosUpper,
    XiBiasedUpper,
    BiasedCorollary,
    CoverageUpper,
    CoverageLower,
}

/// One output row. Fields that do not apply to a method are left empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub rho: f64,
    pub method: Method,
    pub n: Option<usize>,
    pub interval_lo: Option<f64>,
    pub interval_hi: Option<f64>,
    pub value: Option<f64>,
    pub valid: bool,
    pub awsc_certified: bool,
    pub is_transition: bool,
}

impl Row {
    fn bare(rho: f64, method: Method, value: Option<f64>, is_transition: bool) -> Self {
        Row {
            rho,
            method,
            n: None,
            interval_lo: None,
            interval_hi: None,
            valid: value.is_some(),
            value,
            awsc_certified: false,
            is_transition,
        }
    }

    fn analytic(rho: f64, method: Method, bound: AnalyticBound, is_transition: bool) -> Self {
        Row::bare(rho, method, bound.value, is_transition)
    }
}

/// Largest level whose word count stays within the enumeration caps.
pub fn level_cap(spec: &IfsSpec, n_max: usize) -> usize {
    let base = spec.alphabet_size() as u128;
    let mut n = 0;
    while n < n_max.min(DEFAULT_MAX_DEPTH) && base.pow(n as u32 + 1) <= DEFAULT_MAX_WORDS {
        n += 1;
    }
    n
}

fn is_unbiased_bernoulli(spec: &IfsSpec) -> bool {
    spec.m() == 1 && (spec.probs()[0] - 0.5).abs() < 1e-12
}

/// All rows for one contraction factor.
pub fn rows_at(
    spec: &IfsSpec,
    config: &SweepConfig,
    certificate: Option<&IntPolynomial>,
    is_transition: bool,
) -> Result<Vec<Row>, CliError> {
    let rho = spec.rho();
    let mut rows = vec![Row::bare(rho, Method::DimAtZero, Some(dim_at_zero(spec)), is_transition)];
    if is_unbiased_bernoulli(spec) {
        rows.push(Row::analytic(rho, Method::ErdosUpper, erdos_upper_bound_for(spec), is_transition));
    } else {
        rows.push(Row::analytic(rho, Method::XiBiasedUpper, xi_biased_upper_bound(spec), is_transition));
        if spec.m() == 1 {
            rows.push(Row::analytic(rho, Method::BiasedCorollary, biased_corollary_bound_for(spec), is_transition));
        }
    }

    let n_max = level_cap(spec, config.n_max);
    let upper = upper_bound_with(spec, n_max, &config.candidate_bs(), config.admissibility_n_max)?;
    rows.push(Row {
        n: upper.n,
        interval_lo: upper.interval.map(|i| i.lo),
        interval_hi: upper.interval.map(|i| i.hi),
        ..Row::bare(rho, Method::CoverageUpper, upper.value, is_transition)
    });

    let cert = certify_rho(rho, certificate);
    let lower = best_lower_bound(spec, n_max.max(1), false, Some(&cert))?;
    rows.push(Row {
        n: lower.n,
        interval_lo: lower.interval.map(|i| i.lo),
        interval_hi: lower.interval.map(|i| i.hi),
        awsc_certified: lower.flags.awsc_certified,
        ..Row::bare(rho, Method::CoverageLower, lower.value, is_transition)
    });
    Ok(rows)
}

/// Rows for every grid point (and transition point, if requested), sorted
/// by `(rho, method)`.
pub fn sweep(config: &SweepConfig) -> Result<Vec<Row>, CliError> {
    config.validate()?;
    let certificate = config.certificate_polynomial()?;
    let mut points: Vec<(f64, bool)> = config.grid().into_iter().map(|r| (r, false)).collect();
    if config.include_transitions {
        let family = config.ifs.family().expect("validated");
        let level = config.transition_n.unwrap_or(config.n_max).min(MAX_LEVEL);
        let lo = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let hi = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        if lo < hi {
            let set = transition_set(&family, level, lo, hi)?;
            points.extend(set.roots.iter().map(|r| (r.rho, true)));
        }
    }
    let specs = points
        .iter()
        .map(|&(rho, t)| Ok((config.ifs.at(rho)?, t)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let nested = specs
        .par_iter()
        .map(|(spec, t)| rows_at(spec, config, certificate.as_ref(), *t))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows: Vec<Row> = nested.into_iter().flatten().collect();
    rows.sort_by(|a, b| a.rho.total_cmp(&b.rho).then(a.method.cmp(&b.method)));
    Ok(rows)
}
