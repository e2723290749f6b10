use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KakeyaError {
    #[error("{0} is not an odd prime")]
    NonOddPrime(u64),
    #[error("size overflow: {0}")]
    Overflow(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element rank {rank} out of range for field of order {q}")]
    RankOutOfRange { rank: u64, q: u64 },
    #[error("diagonal equation has a zero coefficient at position {0}")]
    ZeroCoefficient(usize),
    #[error("sphere radius must be nonzero")]
    ZeroRadius,
    #[error("hyper-sphere direction must be nonzero")]
    ZeroDirection,
    #[error("the two spheres are identical")]
    IdenticalSpheres,
    #[error("element of rank {0} is not a nonsquare")]
    NotANonsquare(u64),
    #[error("field of order {0} is not a square field (extension degree is odd)")]
    NotASquareField(u64),
    #[error("extension degree {0} is not of the form 2m+1 with m >= 1")]
    WrongDegree(u32),
    #[error("bad dimension {got}: {reason}")]
    BadDimension { got: usize, reason: &'static str },
    #[error("vector has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("work budget exceeded: {required} units required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("{0} is not an odd prime power")]
    NotOddPrimePower(u64),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, KakeyaError>;
