use thiserror::Error;

/// Errors reported by the exact-analysis operations.
///
/// Every variant is a contract violation at the call site (bad index, bad
/// resolution, bad parameter). None of them are recoverable mid-computation:
/// the library never produces a partially-correct grid or norm.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order |n| is undefined for n = 0")]
    OrderOfZero,

    #[error("grid resolutions differ: {left} vs {right}")]
    ResolutionMismatch { left: u32, right: u32 },

    #[error("cannot coarsen a grid: current resolution {current}, requested {requested}")]
    CannotCoarsen { current: u32, requested: u32 },

    #[error(
        "index {index} is not representable at resolution {resolution} (needs < 2^{resolution})"
    )]
    FrequencyOutOfRange { index: u64, resolution: u32 },

    #[error("partial-sum order {order} exceeds 2^{resolution}")]
    PartialSumOutOfRange { order: u64, resolution: u32 },

    #[error("Rademacher index {index} is not measurable at resolution {resolution}")]
    RademacherOutOfRange { index: u32, resolution: u32 },

    #[error("exponent p = {p} must be positive")]
    NonpositiveExponent { p: f64 },

    #[error("partial-sum index k = {k} lies outside the block (2^n, 2^(n+1)] for n = {n}")]
    BlockIndexOutOfRange { n: u32, k: u64 },

    #[error("block range is empty or reversed: n_min = {n_min}, n_max = {n_max}")]
    InvalidBlockRange { n_min: u32, n_max: u32 },

    #[error("counterexample index n = {n} exceeds the materialization cap {cap}")]
    CounterexampleCapExceeded { n: u32, cap: u32 },

    #[error("weighted average needs n >= 2, got {n}")]
    AverageTooShort { n: u64 },

    #[error("power weight exponent must be positive, got {alpha}")]
    NonpositivePowerExponent { alpha: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
