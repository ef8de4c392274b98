//! Rigorous bounds on the set of local dimensions of equicontractive
//! self-similar measures with overlaps.
//!
//! The measures studied here come from iterated function systems
//! `S_j(x) = rho * x + d_j` on `[0, 1]` with probabilities `p_j`: Bernoulli
//! convolutions, Cantor measures and their rescaled m-fold convolutions.
//!
//! * [`ifs`] holds the system itself, word maps and overlap predicates.
//! * [`bounds`] has the closed-form bounds (dimension at 0, Erdős count,
//!   the xi-gap bound for biased measures).
//! * [`expansion`] produces the lazy and middle-digit expansions whose digit
//!   density drives those closed-form bounds.
//! * [`coverage`] computes `N_n(x, I)` profiles and the coverage-based upper
//!   and lower bounds.
//! * [`transition`] enumerates the contraction factors at which the coverage
//!   combinatorics change and sweeps quantities across them.
//! * [`algebraic`] classifies Pisot and Salem numbers for awsc certificates.

pub mod algebraic;
pub mod bounds;
pub mod coverage;
mod error;
pub mod expansion;
pub mod ifs;
pub mod transition;

pub use error::{Error, Result};
pub use ifs::{IfsSpec, Interval, Violation, Word};
