use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("quantum integer of negative argument {0}")]
    NegativeQuantumInteger(i64),
    #[error("binomial ({top} choose {bottom}) out of range")]
    BinomialRange { top: i64, bottom: i64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation point {0} is not positive")]
    NonPositivePoint(String),
    #[error("evaluation point {0} is a pole")]
    Pole(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("rank {0} out of supported range")]
    RankOutOfRange(usize),
    #[error("index {index} out of range for rank {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("form is not homogeneous of a single degree")]
    NotHomogeneous,
    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("bidegree ({0},{1}) out of range")]
    BidegreeOutOfRange(usize, usize),
    #[error("singular Gram block at bidegree ({0},{1})")]
    SingularGram(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
