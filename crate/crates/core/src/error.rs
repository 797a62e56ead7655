use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("value {0} has a nonzero sqrt2 part")]
    NotRational(String),
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("exponent {0} is not on the 1/48 grid")]
    OffGrid(String),
    #[error("coefficient at tick {tick} requested but series is only known below tick {prec}")]
    BeyondPrecision { tick: i64, prec: i64 },
    #[error("series cannot be expanded in the given base: {0}")]
    NotExpandable(String),
    #[error("{0} targets given but only {1} basis coefficients exist")]
    TooManyTargets(usize, usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("monster data: {0}")]
    MonsterData(String),
    #[error("shadow has a nonzero sqrt2 part at tick {0}")]
    IrrationalShadow(i64),
}

pub type Result<T> = std::result::Result<T, Error>;
