use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree {0} exceeds the supported maximum of {max}", max = crate::sphere::MAX_DEGREE)]
    DegreeTooLarge(usize),

    #[error("invalid mode index (n = {n}, k = {k})")]
    InvalidMode { n: usize, k: i64 },

    #[error("quadrature exact to degree {exact_degree} but {required} is required")]
    Aliasing { exact_degree: usize, required: usize },

    #[error("cutoff mismatch: expected {expected}, found {found}")]
    CutoffMismatch { expected: usize, found: usize },

    #[error("grid has {found} values, quadrature expects {expected}")]
    GridMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("time integration unstable at t = {time}: norm grew from {initial} to {current}")]
    Unstable { time: f64, initial: f64, current: f64 },

    #[error("exceptional set is empty for N = {n} and C0 = {c0}")]
    EmptyWindow { n: usize, c0: u64 },
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
