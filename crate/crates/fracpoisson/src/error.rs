use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate law at beta = 1: {0}")]
    Degenerate(&'static str),

    #[error("tolerance {requested:e} not reached: estimate {estimate} with bound {bound:e}")]
    Precision { estimate: f64, bound: f64, requested: f64 },

    #[error(
        "cancellation: largest series term {max_term:e} against result {estimate:e}; \
         use the Laplace-inversion route"
    )]
    Cancellation { estimate: f64, max_term: f64 },

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("inversion not converging under node doubling: {coarse} vs {fine} (bounds {d_coarse:e}, {d_fine:e})")]
    Inversion { coarse: f64, fine: f64, d_coarse: f64, d_fine: f64 },

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
