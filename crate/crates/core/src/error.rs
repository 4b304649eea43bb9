use alloc::string::String;

/// Errors raised by the search primitives.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A register or matrix size is outside the supported range.
    #[error("size error: {0}")]
    Size(String),
    /// Two inputs disagree on their dimensions, or a state lacks the
    /// structure an operation relies on.
    #[error("shape error: {0}")]
    Shape(String),
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! size_err {
    ($($arg:tt)*) => { $crate::error::Error::Size(alloc::format!($($arg)*)) };
}
macro_rules! shape_err {
    ($($arg:tt)*) => { $crate::error::Error::Shape(alloc::format!($($arg)*)) };
}
macro_rules! domain_err {
    ($($arg:tt)*) => { $crate::error::Error::Domain(alloc::format!($($arg)*)) };
}

pub(crate) use {domain_err, shape_err, size_err};
