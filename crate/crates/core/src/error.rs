use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} = {value} is outside the valid domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("root finding did not converge at alpha = {alpha} after {iterations} iterations")]
    NonConvergence { alpha: f64, iterations: usize },

    #[error("limit extrapolation at alpha = {alpha} did not converge (fit residual {residual:e})")]
    LimitFit { alpha: f64, residual: f64 },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, domain: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            domain,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
