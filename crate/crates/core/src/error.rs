use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("cannot parse {input:?} at position {position}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },

    #[error("a cumulant sequence needs at least one entry")]
    EmptyCumulants,

    #[error("malformed triangle: row {row} has {found} entries, expected {expected}")]
    TriangleShape {
        row: usize,
        found: usize,
        expected: usize,
    },

    #[error("index {index} out of range (maximum {max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("{count} compositions exceed the enumeration cap of {cap}")]
    TooManyPaths { count: String, cap: u64 },

    #[error("quadrature did not converge after {doublings} doublings (M = {nodes}): last {last}, previous {previous}")]
    NoConvergence {
        nodes: usize,
        doublings: u32,
        last: String,
        previous: String,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown catalog family {0:?}")]
    UnknownFamily(String),

    #[error("catalog family {family} requires parameter {param}")]
    MissingParameter { family: String, param: String },

    #[error("catalog family {family} does not take parameter {param}")]
    UnexpectedParameter { family: String, param: String },
}

impl Error {
    pub(crate) fn parse(input: &str, position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_owned(),
            position,
            message: message.into(),
        }
    }
}
