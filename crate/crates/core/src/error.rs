use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("malformed Cartan matrix: {0}")]
    BadShape(String),
    #[error("matrix is not of affine type")]
    NotAffine,
    #[error("matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("unknown Cartan type `{0}`")]
    UnknownType(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("input violates the cocycle condition: {0}")]
    CocycleViolation(String),
    #[error("linear system is inconsistent: {0}")]
    Inconsistent(String),
    #[error("support did not close after {0} growth rounds")]
    SupportGrowthExceeded(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }
}

#[derive(Debug, Error)]
pub enum GrothError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("computed class has a term outside the level window ({0})")]
    Window(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache format: {0}")]
    Format(String),
    #[error("cache belongs to a different Cartan datum ({0})")]
    Mismatch(String),
}

#[derive(Debug, Error)]
pub enum CharacterError {
    #[error("highest weight is not dominant")]
    NotDominant,
    #[error("weight has negative level")]
    NegativeLevel,
    #[error("only untwisted types are supported for characters")]
    Twisted,
    #[error("coefficient cannot be expanded as a power series in q^-1")]
    NotExpandable,
    #[error(transparent)]
    Groth(#[from] GrothError),
}
