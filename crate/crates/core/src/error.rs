use std::fmt;
use std::path::PathBuf;

use num_bigint::BigUint;
use num_rational::BigRational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument outside the operation's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input violates a structural invariant (block sizes, ranges, duplicates).
    #[error("structural error: {message}{}", Offenders(.offenders))]
    Structural {
        message: String,
        offenders: Vec<String>,
    },

    /// Parameters whose derived counts λ_s are not all integers.
    #[error("inadmissible parameters: non-integral {}", NonIntegral(.0))]
    Inadmissible(Vec<(u32, BigRational)>),

    /// A construction was asked for on input that does not meet its precondition.
    #[error("construction precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("work budget exceeded: {what} needs {required} units, budget is {budget}")]
    Budget {
        what: &'static str,
        required: BigUint,
        budget: u64,
    },

    #[error("{}: parse error at line {line}, column {column}: {message}", .path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A construction produced output that failed its own post-check.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn structural(message: impl Into<String>, offenders: Vec<String>) -> Self {
        Error::Structural {
            message: message.into(),
            offenders,
        }
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }
}

struct Offenders<'a>(&'a [String]);

impl fmt::Display for Offenders<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SHOWN: usize = 16;
        if self.0.is_empty() {
            return Ok(());
        }
        write!(f, " [")?;
        for (i, o) in self.0.iter().take(SHOWN).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{o}")?;
        }
        if self.0.len() > SHOWN {
            write!(f, "; ... {} more", self.0.len() - SHOWN)?;
        }
        write!(f, "]")
    }
}

struct NonIntegral<'a>(&'a [(u32, BigRational)]);

impl fmt::Display for NonIntegral<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (s, value)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "lambda_{s} = {value}")?;
        }
        Ok(())
    }
}
