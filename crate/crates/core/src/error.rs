use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A count or index that must be positive was zero.
    #[error("{name} must be at least {min}, got {value}")]
    TooSmall { name: &'static str, min: u64, value: u64 },

    /// A real argument fell outside its admissible range.
    #[error("{name} = {value} is outside {range}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NotConverged { sweeps: usize, off_norm: f64 },

    /// The Monte Carlo standard error of a covariance estimate vanished.
    #[error("degenerate covariance estimate at grid indices ({s_index}, {t_index}): standard error is zero")]
    DegenerateStderr { s_index: usize, t_index: usize },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("malformed ensemble file: {0}")]
    Format(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub(crate) fn require_at_least(name: &'static str, value: u64, min: u64) -> Result<()> {
    if value < min {
        Err(Error::TooSmall { name, min, value })
    } else {
        Ok(())
    }
}

pub(crate) fn require_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            name,
            value,
            range: "[0, 1]",
        })
    }
}
