//! Numeric and exact experiments around the local polar structure at an
//! ordinary singular point: the resultant identity for the pencil
//! polynomials, smoothness of the pencil, the λ/μ roots and measured outer
//! contact exponents.
//!
//! Every multiprecision value is created through [`mp::Precision`], which
//! bumps a process-wide counter; exact code paths can assert that the
//! counter did not move.

pub mod claims;
pub mod contact;
pub mod mp;
pub mod roots;

use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::curve::CurveError;

pub use claims::{
    claim1_pencil_check, claim2_experiment, lambda_mu_roots, lambda_mu_with_retry, pencil_from_slopes,
    pencil_polynomials, Claim1Report, Claim2Report, LambdaMu, PencilSample, SymbolicCheck, MU_SEQUENCE,
};
pub use contact::{outer_contact_slope, ContactEstimate, ContactSample};
pub use mp::{Cx, Precision};

/// Default working precision in decimal digits.
pub const DEFAULT_DIGITS: usize = 60;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("k must be at least 2, got {0}")]
    BadK(usize),
    #[error("need at least one trial")]
    NoTrials,
    #[error("point is not an ordinary singular point")]
    NotOrdinary,
    #[error("mu = {0} is not generic: roots of prod(lambda + a_i) - mu collide")]
    NonGenericMu(String),
    #[error("no generic mu in the fixed sequence")]
    MuExhausted,
    #[error("branch pair ({0}, {1}) is not a pair of distinct branches out of {2}")]
    BadPair(usize, usize, usize),
    #[error("point index {0} out of range")]
    BadPoint(usize),
    #[error("root tracking swapped branches near |v| = {0:e}")]
    BranchSwap(f64),
    #[error("epsilon {eps:e} is below what {digits} digits resolve (need eps >= {min:e})")]
    PrecisionAdvisory { eps: f64, digits: usize, min: f64 },
    #[error("epsilon grid needs at least two positive values in (0, 1)")]
    BadGrid,
}

static FLOAT_USES: AtomicU64 = AtomicU64::new(0);

pub(crate) fn note_float_use() {
    FLOAT_USES.fetch_add(1, Ordering::Relaxed);
}

/// Number of multiprecision values created so far in this process.
pub fn float_uses() -> u64 {
    FLOAT_USES.load(Ordering::Relaxed)
}
