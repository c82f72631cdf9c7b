use alloc::string::String;

/// Errors raised by the feature, training and data-processing operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("clip too short: need {needed} samples, got {got}")]
    ClipTooShort { needed: usize, got: usize },
    #[error("sample rate {0} Hz is below the 8000 Hz required for speech features")]
    SampleRateTooLow(u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("autocorrelation is singular (zero-energy frame)")]
    SingularAutocorrelation,
    #[error("no voiced frames in clip")]
    NoVoicedFrames,
    #[error("lexicon is empty")]
    EmptyLexicon,
    #[error("no video affect vector stored for clip `{0}`")]
    MissingVideoAffect(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("tape was recorded against an older version of the network")]
    StaleTape,
    #[error("empty batch")]
    EmptyBatch,
    #[error("inconsistent feature dimension: expected {expected}, found {found}")]
    InconsistentFeatureDim { expected: usize, found: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("value {value} outside [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },
    #[error("window [{start_s}, {end_s}) s is not covered by the annotation stream")]
    WindowOutOfStream { start_s: f64, end_s: f64 },
    #[error("first and last words must carry a bin")]
    UnanchoredSequence,
    #[error("assigned bins decrease at word {0}")]
    NonMonotonicBins(usize),
    #[error("{speakers} speakers cannot fill {sets} speaker-exclusive partitions")]
    InsufficientSpeakers { speakers: usize, sets: usize },
    #[error("duplicate clip id `{0}`")]
    DuplicateClipId(String),
    #[error("clip `{0}` has a raw label but no scale tag")]
    MissingScaleTag(String),
    #[error("empty input")]
    Empty,
    #[error("series has zero variance")]
    DegenerateVariance,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
