//! Rigorous numerics: dyadic ball arithmetic, certified zeta values,
//! direct series summation, and the numeric side of the form pipeline.

pub mod dyadic;
pub mod enclosure;
pub mod sampling;
pub mod series;
pub mod zeta;

use thiserror::Error;

use crate::linear_forms::LinearFormError;
use crate::ratfun::RatFunError;

pub use dyadic::Dyadic;
pub use enclosure::{Enclosure, Sign};
pub use series::{
    delta, normalized_decay, sum_series, FormNumerics, Grid, SeriesSum, SummandSequence,
};
pub use zeta::{pow10_target, zeta_value};

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("zeta index must be at least 2, got {i}; the i = 1 series has no limit at the evaluation point")]
    ZetaIndexTooSmall { i: u32 },
    #[error("divisor interval straddles zero")]
    DivisorStraddlesZero,
    #[error("log of an interval touching or crossing zero")]
    LogOfNonPositive,
    #[error("root of an interval extending below zero")]
    RootOfNegative,
    #[error("requested precision unattainable: {detail}")]
    PrecisionUnattainable { detail: String },
    #[error("series cutoff {cutoff} exhausted before reaching the target radius")]
    CutoffExhausted {
        cutoff: u64,
        attained: Box<Enclosure>,
    },
    #[error("7r - r^ at n = {n}, s = {s} is not positive (upper bound {hi}); normalized decay undefined")]
    DeltaNotPositive { n: u32, s: u32, hi: String },
    #[error("sign of 7r - r^ at n = {n}, s = {s} could not be certified")]
    DeltaSignIndeterminate { n: u32, s: u32 },
    #[error("independent evaluation routes disagree: {what}")]
    CrossRouteMismatch { what: String },
    #[error(transparent)]
    RatFun(#[from] RatFunError),
    #[error(transparent)]
    LinearForm(#[from] LinearFormError),
}
