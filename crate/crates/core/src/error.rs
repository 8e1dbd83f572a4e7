use std::fmt;

use thiserror::Error;

/// Failure to read a set literal such as `{3,4,5}`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseSetError {
    #[error("malformed set literal token `{0}`")]
    Malformed(String),
    #[error("duplicate element `{0}` in set literal")]
    Duplicate(String),
    #[error("negative element `{0}` in set literal")]
    Negative(String),
    #[error("element `{token}` exceeds the largest accepted element {limit}")]
    TooLarge { token: String, limit: usize },
}

/// An argument outside the range an exhaustive operation accepts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct RangeError {
    pub what: &'static str,
    pub value: usize,
    pub limit: usize,
    pub hint: Option<&'static str>,
}

impl RangeError {
    pub(crate) fn check(what: &'static str, value: usize, limit: usize) -> Result<(), Self> {
        if value > limit {
            Err(Self {
                what,
                value,
                limit,
                hint: None,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn with_hint(mut self, hint: &'static str) -> Self {
        self.hint = Some(hint);
        self
    }
}

impl fmt::Display for RangeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {} exceeds the limit of {}",
            self.what, self.value, self.limit
        )?;
        if let Some(hint) = self.hint {
            write!(f, " ({hint})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseSetError),
    #[error(transparent)]
    Range(#[from] RangeError),
    #[error("internal error: {0}")]
    Internal(String),
}
