use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("not a .flo file (bad magic {0})")]
    BadMagic(f32),
    #[error("truncated .flo payload: expected {expected} bytes, got {actual}")]
    Truncated { expected: usize, actual: usize },
    #[error("non-finite value in flow payload at index {0}")]
    NonFinite(usize),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid kernel spec: size {size}, sigma {sigma}")]
    InvalidKernelSpec { size: usize, sigma: f64 },
    #[error("field {width}x{height} is smaller than the {min}x{min} filter")]
    FieldTooSmall { width: usize, height: usize, min: usize },
    #[error("foreground mask has no foreground pixels")]
    EmptyMask,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("empty frame sequence")]
    EmptySequence,
    #[error("malformed mask image: {0}")]
    Pnm(String),

    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("bad annotation: {0}")]
    BadAnnotation(String),

    #[error("invalid signal: {0}")]
    InvalidSignal(String),
    #[error("window {window} must be odd and within 1..={len}")]
    WindowTooLarge { window: usize, len: usize },
    #[error("signal too short: {0}")]
    SignalTooShort(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("every channel is constant or zero")]
    AllChannelsDegenerate,

    #[error("length mismatch: {0} predictions vs {1} truths")]
    LengthMismatch(usize, usize),
    #[error("truth count at index {0} is not positive")]
    ZeroTruth(usize),
    #[error("corpus format error in {path}: {reason}")]
    CorpusFormat { path: PathBuf, reason: String },

    #[error("invalid config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
