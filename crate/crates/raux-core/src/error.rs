use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pole at {0}")]
    Pole(String),
    #[error("point {0} lies on a branch cut")]
    BranchCut(String),
    #[error("point {point} is outside the {region} region")]
    Region { point: String, region: &'static str },
    #[error("truncation order {k} out of range 0..={max}")]
    OrderOutOfRange { k: usize, max: usize },
    #[error("jet error: {0}")]
    Jet(&'static str),
    #[error("coefficient error: {0}")]
    Coeff(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("zero on or near contour: {0}")]
    EdgeZero(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn fmt_c(z: num_complex::Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}
