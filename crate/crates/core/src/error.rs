use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("negative eigenvalue {0:e} beyond tolerance")]
    NotPositive(f64),
    #[error("trace {0} is not one")]
    Trace(f64),
    #[error("unknown site label {0}")]
    UnknownSite(usize),
    #[error("operator supports overlap")]
    OverlappingSupports,
    #[error("operator is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("Kraus set is not trace preserving (deviation {0:e})")]
    NotTracePreserving(f64),
    #[error("state is not weakly symmetric (deviation {0:e})")]
    NotSymmetric(f64),
    #[error("operator does not carry a definite charge (deviation {0:e})")]
    Charge(f64),
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("{got} points in fit window, need at least {need}")]
    InsufficientPoints { got: usize, need: usize },
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error("decomposition failed: {0}")]
    Linalg(&'static str),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
