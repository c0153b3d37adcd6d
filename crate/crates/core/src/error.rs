use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what}: bound exceeded ({value} > {limit})")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("operator term {term} is not weight preserving")]
    NotWeightPreserving { term: String },

    #[error("division by zero while substituting {0}")]
    DivisionByZero(&'static str),

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("exponent for t_{k} is not rational for partition {partition}: {value}")]
    NonRationalExponent {
        k: usize,
        partition: String,
        value: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
