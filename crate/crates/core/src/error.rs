use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the range where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested value is not covered by a precomputed table.
    #[error("table covers 0..={max}, but index {index} was requested")]
    TableTooShort { index: usize, max: usize },

    /// The enumeration oracle refuses sizes above its cap.
    #[error("enumeration of partitions of {n} exceeds the oracle cap {cap}")]
    OracleCap { n: usize, cap: usize },

    /// An exact check found a point where the claimed inequality fails.
    #[error("{claim} fails at n = {n}, k = {k}")]
    Counterexample { claim: &'static str, n: usize, k: usize },

    /// The peak formula is only claimed for n >= 4; smaller rows tie or are too short.
    #[error("peak location is undefined for n = {0} (requires n >= 4)")]
    PeakUndefined(usize),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
