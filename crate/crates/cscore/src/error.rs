//! Error type shared by every module in the crate.

/// Everything that can go wrong while validating inputs, evaluating
/// metrics, or reading datasets from disk.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A confusion-matrix count was negative or not finite.
    #[error("{name} must be a finite non-negative count, got {value}")]
    InvalidCount { name: &'static str, value: f64 },

    /// A cost ratio must be a positive finite real.
    #[error("cost ratio must be positive and finite, got {value}")]
    InvalidCostRatio { value: f64 },

    /// A numeric argument was outside its documented range.
    #[error("{name} must be {expected}, got {value}")]
    InvalidArgument {
        name: &'static str,
        expected: &'static str,
        value: f64,
    },

    /// A structurally invalid configuration (message explains which field).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// The dataset contains no ground-truth positives, so recall-based
    /// metrics are undefined.
    #[error("dataset contains no ground-truth positives")]
    DegenerateDataset,

    /// A one-vs-rest split found no example of the requested class.
    #[error("no example has true class {class}")]
    DegenerateClass { class: usize },

    /// The requested value diverges (for example the cost of a classifier
    /// with zero F1, or of zero precision with positive recall).
    #[error("cost is unbounded: {reason}")]
    UnboundedCost { reason: &'static str },

    /// No precision in (0, 1] exists on the requested curve at this recall.
    #[error("no feasible precision at recall {recall} for level {level}")]
    InfeasiblePoint { recall: f64, level: f64 },

    /// Curve sampling found no feasible recall at all.
    #[error("no feasible recall on the curve at level {level}")]
    EmptyCurve { level: f64 },

    /// A cost ratio was requested that the sweep did not evaluate.
    #[error("cost ratio {ratio} was not part of the sweep")]
    UnknownRatio { ratio: f64 },

    /// Two parallel per-class lists disagree on length.
    #[error("expected {expected} per-class entries, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    /// A dataset file could not be parsed. Lines are 1-based and include
    /// the header line.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A parsed score fell outside [0, 1].
    #[error("line {line}: score {value} is outside [0, 1]")]
    ScoreRange { line: usize, value: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
