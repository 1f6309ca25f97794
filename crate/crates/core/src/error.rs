use thiserror::Error;

/// Errors raised by the geometry engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dilation factor must be positive, got {0}")]
    NonPositiveDilation(f64),
    #[error("vector is not horizontal (X3 coefficient {0})")]
    NotHorizontal(f64),
    #[error("time {t} outside the profile domain (-{halfwidth}, {halfwidth})")]
    OutOfDomain { t: f64, halfwidth: f64 },
    #[error("step must be positive, got {0}")]
    NonPositiveStep(f64),
    #[error("time {t} outside the sampled range [{lo}, {hi}]")]
    OutOfRange { t: f64, lo: f64, hi: f64 },
    #[error("argument {0} outside (-pi, pi)")]
    PsiDomain(f64),
    #[error("{what} did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },
    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series division by a series with zero constant term")]
    ZeroLeadingCoefficient,
    #[error("composition requires an inner series with zero constant term")]
    NonzeroInnerConstant,
    #[error("reversion requires s0 = 0 and s1 != 0")]
    NotInvertible,
    #[error("coefficient still depends on the initial heading: {0}")]
    HeadingDependent(String),
    #[error("design matrix is rank deficient")]
    RankDeficient,
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("constant geodesic curvature is zero; the projection is a circle or a line")]
    ZeroCurvature,
}

pub type Result<T> = std::result::Result<T, Error>;
