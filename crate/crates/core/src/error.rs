use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A pairing or action needed a coefficient beyond the truncation
    /// degree of a dual element.
    #[error("truncation insufficient: needed degree {needed}, known up to {available}")]
    TruncationInsufficient { needed: usize, available: i64 },

    /// Two operands live over different free-module signatures.
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    /// A coproduct pattern is not a valid surjection.
    #[error("malformed pattern: {0}")]
    MalformedPattern(String),

    /// A bracket value escaped the representable degree window.
    #[error("degree window too small: bracket of generators with degrees {left} and {right} escapes the stored window {window}")]
    WindowTooSmall {
        left: usize,
        right: usize,
        window: usize,
    },

    /// The reconstruction cutoff missed nonzero Fourier coefficients.
    #[error("cutoff {cutoff} too small: nonzero coefficient found at degree {found}")]
    CutoffTooSmall { cutoff: usize, found: usize },

    /// Structure constants do not present a Lie algebra.
    #[error("invalid Lie algebra presentation: {0}")]
    InvalidPresentation(String),

    /// A precondition on an input structure failed.
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
