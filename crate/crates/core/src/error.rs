use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("null state: amplitudes have zero norm")]
    NullState,

    #[error("length mismatch: basis has {basis} labels but {amplitudes} amplitudes were given")]
    LengthMismatch { basis: usize, amplitudes: usize },

    #[error("basis mismatch between operands")]
    BasisMismatch,

    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),

    #[error("label {0:?} is not part of the basis")]
    UnknownLabel(String),

    #[error("variate {0} is outside [0, 1)")]
    InvalidVariate(f64),

    #[error("post-selection impossible: both branches have zero weight")]
    PostSelectionImpossible,

    #[error("undefined weak value: pre- and post-selected states are orthogonal")]
    UndefinedWeakValue,

    #[error("meter post-selection impossible: vanishing meter norm")]
    MeterPostSelectionImpossible,

    #[error("invalid meter parameter {name} = {value}: must be finite and positive")]
    InvalidMeterParameter { name: &'static str, value: f64 },

    #[error("monte carlo needs at least one run")]
    NoRuns,

    #[error("protocol error: {0}")]
    Protocol(String),
}
