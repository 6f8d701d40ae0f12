/// Crate-wide error type.
///
/// Mathematical failures (a certificate that does not check out, a selftest
/// criterion that fails) are *not* errors: they are reported through the
/// respective result types. `Error` covers misuse of the API surface —
/// incompatible shapes, out-of-range indices, unparseable input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Operands have incompatible shapes (matrix sizes, tensor lengths).
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// An index (marking, slot, handle) is outside its valid range.
    #[error("index out of range: {0}")]
    IndexRange(String),
    /// A parameter combination the operation does not support.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A serialized label or certificate line could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
