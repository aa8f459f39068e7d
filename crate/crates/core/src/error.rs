use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} outside alphabet of rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("alphabet mismatch: rank {left} vs rank {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("coset enumeration exceeded {limit} cosets")]
    CosetOverflow { limit: usize },

    #[error("coset table is incomplete")]
    IncompleteTable,

    #[error("presentation does not satisfy C'(1/6)")]
    NotSmallCancellation,

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("section law fails on generator {generator}")]
    SectionLawViolated { generator: usize },

    #[error("cannot decide triviality of component {factor}")]
    UndecidableComponent { factor: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown case id `{0}`")]
    UnknownCase(String),

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
