//! Crate-wide error type.

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The metric factor 1 + 2V/c^2 is non-positive, i.e. the requested radius
    /// lies at or inside the horizon of the central body.
    #[error("inside horizon: metric factor non-positive at r = {r} m")]
    InsideHorizon { r: f64 },

    /// A spectral mode whose effective support extends to non-positive
    /// frequencies or is otherwise unnormalizable.
    #[error("non-physical spectrum: {0}")]
    NonPhysicalSpectrum(String),

    /// The shifted self-overlap never decays to 1/e inside the search window
    /// (e.g. a monochromatic line).
    #[error("no finite coherence time within the search window")]
    NoFiniteCoherenceTime,

    /// A frequency grid captures too little of the mode's norm to stand in
    /// for it.
    #[error("frequency grid covers only {coverage:.12} of the spectral norm (need >= {required})")]
    InsufficientCoverage { coverage: f64, required: f64 },

    /// A phase grid too coarse or too short to extract fringe parameters.
    #[error("under-sampled fringe grid: {0}")]
    UndersampledGrid(String),

    /// Malformed configuration input (file syntax, missing keys, bad values).
    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    /// True for errors that indicate bad user input rather than a violated
    /// physics invariant. The CLI maps these to exit code 2.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config(_))
    }
}
