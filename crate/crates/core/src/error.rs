use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Ordinate magnitude reached the `2^62` guard.
    #[error("ordinate {0} exceeds the 2^62 magnitude bound")]
    OrdinateOverflow(i64),

    /// A walk coordinate reached the `2^62` guard.
    #[error("coordinate overflow stepping from ({x}, {y})")]
    CoordinateOverflow { x: i64, y: i64 },

    /// An explicit environment was queried outside its table.
    #[error("explicit environment has no orientation for ordinate {0}")]
    UncoveredOrdinate(i64),

    /// A recorded trajectory would exceed the configured recording cap.
    #[error("trajectory of {steps} steps exceeds the recording cap {cap}")]
    RecordingCap { steps: u64, cap: u64 },

    /// Malformed decomposition handed to `reconstruct`.
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    /// Argument outside the mathematical domain of a closed form.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature ran out of panels before reaching tolerance.
    #[error(
        "quadrature did not converge: estimate {estimate:.6e}, \
         error {error:.3e}, tolerance {tolerance:.3e}, {panels} panels"
    )]
    QuadratureNonConvergence {
        estimate: f64,
        error: f64,
        tolerance: f64,
        panels: usize,
    },

    /// An estimator was asked for a fit it cannot support.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Malformed lattice/environment spec string.
    #[error("invalid lattice spec {spec:?}: {reason}")]
    InvalidSpec { spec: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
