use std::path::{Path, PathBuf};

use locdim_core::algebraic::IntPolynomial;
use locdim_core::transition::BernoulliFamily;
use locdim_core::IfsSpec;
use serde::{Deserialize, Serialize};

use crate::output::Format;
use crate::CliError;

/// An IFS, possibly without its contraction factor.
///
/// ```json
/// {"type": "bernoulli", "p0": 0.4}
/// {"type": "explicit", "rho": 0.6, "digits": [0, 0.2, 0.4], "probs": [0.2, 0.5, 0.3]}
/// {"type": "convolution", "base": {"type": "bernoulli", "p0": 0.3}, "m": 3}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum IfsTemplate {
    Explicit {
        rho: f64,
        digits: Vec<f64>,
        probs: Vec<f64>,
    },
    Bernoulli {
        #[serde(default)]
        rho: Option<f64>,
        #[serde(default = "half")]
        p0: f64,
    },
    Convolution {
        base: Box<IfsTemplate>,
        m: usize,
    },
}

fn half() -> f64 {
    0.5
}

impl IfsTemplate {
    /// Bernoulli template, or its `m`-fold convolution when `m > 1`.
    pub fn bernoulli(rho: Option<f64>, p0: f64, m: usize) -> Self {
        let base = IfsTemplate::Bernoulli { rho, p0 };
        if m > 1 {
            IfsTemplate::Convolution { base: Box::new(base), m }
        } else {
            base
        }
    }

    /// The contraction factor fixed by the template, if any.
    pub fn rho(&self) -> Option<f64> {
        match self {
            IfsTemplate::Explicit { rho, .. } => Some(*rho),
            IfsTemplate::Bernoulli { rho, .. } => *rho,
            IfsTemplate::Convolution { base, .. } => base.rho(),
        }
    }

    /// The system at its own contraction factor.
    pub fn spec(&self) -> Result<IfsSpec, CliError> {
        let rho = self
            .rho()
            .ok_or_else(|| CliError::InvalidConfig("the IFS has no rho; pass --rho".into()))?;
        self.at(rho)
    }

    /// The system at contraction factor `rho`, with attractor `[0, 1]`.
    pub fn at(&self, rho: f64) -> Result<IfsSpec, CliError> {
        let spec = match self {
            IfsTemplate::Explicit {
                rho: own,
                digits,
                probs,
            } => {
                let spec = IfsSpec::new(*own, digits.clone(), probs.clone())?;
                if rho == *own {
                    spec
                } else {
                    spec.with_rho(rho)?
                }
            }
            IfsTemplate::Bernoulli { p0, .. } => IfsSpec::bernoulli(rho, *p0)?,
            IfsTemplate::Convolution { base, m } => {
                let base = IfsSpec::bernoulli_relaxed(rho, base.two_map_p0()?)?;
                let spec = IfsSpec::convolution(&base, *m)?;
                if !spec.has_unit_attractor() {
                    return Err(CliError::InvalidConfig(format!(
                        "the {m}-fold convolution at rho = {rho} does not have attractor [0, 1]"
                    )));
                }
                spec
            }
        };
        Ok(spec)
    }

    fn two_map_p0(&self) -> Result<f64, CliError> {
        match self {
            IfsTemplate::Bernoulli { p0, .. } => Ok(*p0),
            IfsTemplate::Explicit { digits, probs, .. } if digits.len() == 2 => Ok(probs[0]),
            _ => Err(CliError::InvalidConfig("convolution base must be a two-map IFS".into())),
        }
    }

    /// The two-map family through this template, for transition points.
    pub fn family(&self) -> Option<BernoulliFamily> {
        match self {
            IfsTemplate::Bernoulli { p0, .. } => Some(BernoulliFamily { p0: *p0 }),
            IfsTemplate::Convolution { base, m: 1 } => base.family(),
            IfsTemplate::Explicit { digits, probs, .. } if digits.len() == 2 => Some(BernoulliFamily { p0: probs[0] }),
            _ => None,
        }
    }
}

/// Parameters of a sweep over `rho`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub ifs: IfsTemplate,
    #[serde(default = "default_rho_min")]
    pub rho_min: f64,
    #[serde(default = "default_rho_max")]
    pub rho_max: f64,
    #[serde(default = "default_step")]
    pub step: f64,
    /// Explicit grid, used instead of `rho_min..rho_max` by `step`.
    #[serde(default)]
    pub grid: Option<Vec<f64>>,
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    /// Symmetric intervals `(b, 1 - b)` tried for the coverage upper bound,
    /// besides the always-admissible one.
    #[serde(default = "default_candidates")]
    pub candidate_intervals: Vec<(f64, f64)>,
    #[serde(default = "default_admissibility_n_max")]
    pub admissibility_n_max: usize,
    #[serde(default)]
    pub include_transitions: bool,
    /// Level of the transition points added to the grid (default `n_max`).
    #[serde(default)]
    pub transition_n: Option<usize>,
    /// Polynomial (highest degree first) with root `1/rho`, for awsc.
    #[serde(default)]
    pub certificate: Option<Vec<i64>>,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

fn default_rho_min() -> f64 {
    0.5
}

fn default_rho_max() -> f64 {
    0.851
}

fn default_step() -> f64 {
    0.001
}

fn default_n_max() -> usize {
    10
}

fn default_admissibility_n_max() -> usize {
    locdim_core::coverage::DEFAULT_ADMISSIBILITY_N_MAX
}

fn default_candidates() -> Vec<(f64, f64)> {
    locdim_core::coverage::DEFAULT_CANDIDATE_BS.iter().map(|&b| (b, 1.0 - b)).collect()
}

impl SweepConfig {
    pub fn new(ifs: IfsTemplate) -> Self {
        SweepConfig {
            ifs,
            rho_min: default_rho_min(),
            rho_max: default_rho_max(),
            step: default_step(),
            grid: None,
            n_max: default_n_max(),
            candidate_intervals: default_candidates(),
            admissibility_n_max: default_admissibility_n_max(),
            include_transitions: false,
            transition_n: None,
            certificate: None,
            format: Format::default(),
            out: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let config: SweepConfig = serde_json::from_str(text).map_err(|e| CliError::InvalidConfig(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::InvalidConfig(format!("{}: {e}", path.display())))?;
        SweepConfig::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::InvalidConfig(msg));
        if let Some(grid) = &self.grid {
            if grid.is_empty() || grid.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
                return bad("grid values must lie in (0, 1)".into());
            }
        } else {
            if !(0.0 < self.rho_min && self.rho_min < self.rho_max && self.rho_max < 1.0) {
                return bad(format!("need 0 < rho_min < rho_max < 1, got {} and {}", self.rho_min, self.rho_max));
            }
            if !(self.step > 0.0) {
                return bad(format!("step must be positive, got {}", self.step));
            }
        }
        if self.n_max == 0 {
            return bad("n_max must be at least 1".into());
        }
        for &(lo, hi) in &self.candidate_intervals {
            if !(0.0 < lo && lo < 0.5 && (lo + hi - 1.0).abs() < 1e-12) {
                return bad(format!("candidate interval ({lo}, {hi}) is not of the form (b, 1 - b) with 0 < b < 1/2"));
            }
        }
        if self.include_transitions && self.ifs.family().is_none() {
            return bad("transition points are only available for two-map systems".into());
        }
        if let Some(n) = self.transition_n {
            if n == 0 || n > locdim_core::transition::MAX_LEVEL {
                return bad(format!("transition_n must be in 1..={}", locdim_core::transition::MAX_LEVEL));
            }
        }
        if let Some(c) = &self.certificate {
            IntPolynomial::new(c.clone())?;
        }
        Ok(())
    }

    /// Grid values of `rho`, rounded to 12 decimals.
    pub fn grid(&self) -> Vec<f64> {
        if let Some(grid) = &self.grid {
            return grid.clone();
        }
        let count = ((self.rho_max - self.rho_min) / self.step + 1e-9).floor() as usize;
        (0..=count)
            .map(|i| ((self.rho_min + self.step * i as f64) * 1e12).round() / 1e12)
            .collect()
    }

    pub fn candidate_bs(&self) -> Vec<f64> {
        self.candidate_intervals.iter().map(|&(lo, _)| lo).collect()
    }

    pub fn certificate_polynomial(&self) -> Result<Option<IntPolynomial>, CliError> {
        Ok(self.certificate.clone().map(IntPolynomial::new).transpose()?)
    }
}
