//! Error types for the library.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse Gaussian rational from {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("inconsistent conjugate assignment for {0}")]
    InconsistentConjugate(String),
    #[error("variable {0} has no numeric value")]
    Unassigned(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("component degree must be at least 2, got {0}")]
    ComponentTooSmall(i64),
    #[error("invalid letter ({0},{1}): need n1 >= -1, n2 >= -1 and n1 + n2 >= 1")]
    InvalidLetter(i32, i32),
    #[error("cannot parse word from {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("no operator for letter {0}")]
    UnknownLetter(String),
    #[error("bracket of the empty word is undefined")]
    EmptyWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstraintError {
    #[error("{var} is a dependent coefficient of component {r} and cannot be assigned")]
    DependentAssignment { var: String, r: u32 },
    #[error("{var} = {value} violates the Hamiltonian reality condition (real part must vanish)")]
    RealityViolation { var: String, value: String },
    #[error("{var} is not a coefficient of component {r}")]
    UnknownVariable { var: String, r: u32 },
    #[error("component degree must be at least 2, got {0}")]
    ComponentTooSmall(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorrectionError {
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("maximum depth must be at least 2, got {0}")]
    DepthTooSmall(u32),
    #[error("depth {0} is not odd")]
    OddDepth(u32),
    #[error("fundamental lemma needs r >= 2, got {0}")]
    RankTooSmall(u32),
    #[error("field is not fully numeric: {0}")]
    NotNumeric(String),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct FieldParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
    #[error(transparent)]
    Correction(#[from] CorrectionError),
    #[error(transparent)]
    FieldParse(#[from] FieldParseError),
    #[error("invalid theorem condition: {0}")]
    Condition(String),
    #[error("generator document: {0}")]
    Document(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
