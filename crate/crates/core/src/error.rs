use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed algebraic number: {0}")]
    MalformedAlgebraic(String),
    #[error("oracle failure: {0}")]
    OracleFailure(String),
    #[error("comparison undecided at precision {0}")]
    ComparisonUndecidedAtPrecision(u32),
    #[error("truncation insufficient to decide: {0}")]
    TruncationInsufficient(String),
    #[error("negative valuation: residue undefined")]
    NegativeValuation,
    #[error("archimedean class mismatch")]
    ClassMismatch,
    #[error("exponent dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("constraints are unsatisfiable")]
    Unsatisfiable,
    #[error("atom is not linear in the variable: {0}")]
    NonlinearUnsupported(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("real sits on a dyadic boundary undecidable at precision {0}")]
    BoundaryUndecided(u32),
    #[error("node {0} is not in the tree")]
    NodeNotInTree(String),
    #[error("prefix is not a chain")]
    NotAChain,
    #[error("sequence is not pseudo-Cauchy: {0}")]
    NotPseudoCauchy(String),
    #[error("type is not finitely satisfiable; conflicting formulas: {}", .0.join(" ; "))]
    NotFinitelySatisfiable(Vec<String>),
    #[error("budget exhausted during {0}")]
    BudgetExhausted(String),
    #[error("pseudo limit fails side query at {0}")]
    PseudoLimitUnverified(String),
    #[error("cut oracle inconsistency: {0}")]
    OracleInconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
