use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(u32),

    #[error("slope {0} lies outside [-g-1, -g) for g = {1}")]
    SlopeOutOfRange(BigRational, u32),

    #[error("level R must be at least {min}, got {got}")]
    LevelTooSmall { min: u32, got: u32 },

    #[error("rank {rk} is not a multiple of the slope denominator {r}")]
    RankNotMultiple { rk: u64, r: BigInt },

    #[error("rank must be positive")]
    ZeroRank,

    #[error("margin check is undefined for rank 1 (degenerate rank)")]
    DegenerateRank,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("oracle cap exceeded: n = {n} > cap = {cap}")]
    OracleCap { n: u64, cap: u64 },

    #[error("exact sequence yields non-positive rank (inconsistent inputs)")]
    InconsistentSequence,

    #[error("polynomial fit needs at least {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },

    #[error("sample genus {g} is below the fit regime g >= R = {r}")]
    SampleOutOfRegime { g: u32, r: u32 },

    #[error("fitted polynomial has degree {got}, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("fitted polynomial fails to predict held-out genus {g}")]
    PredictionMismatch { g: u32 },

    #[error("value does not fit in a machine integer: {0}")]
    Overflow(String),

    #[error("invalid {what}: {detail}")]
    Parse { what: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
