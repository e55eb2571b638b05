use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("series needs at least one coefficient")]
    Empty,
    #[error("coefficient {index} is not finite")]
    NonFinite { index: usize },
    #[error("division by a series with zero constant term")]
    DivisionByZeroConstantTerm,
    #[error("{op} needs constant term {expected}, found {found}")]
    BadConstantTerm { op: &'static str, expected: f64, found: Complex64 },
    #[error("cannot shift a series of order {order} down by {shift}")]
    ShiftTooLarge { shift: usize, order: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PsiError {
    #[error("principal branch undefined at z = {z}")]
    BranchCutHit { z: Complex64 },
    #[error("|z| = {modulus} lies outside the closed unit disk")]
    OutsideDisk { modulus: f64 },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("unknown generator name `{0}`")]
    UnknownName(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("no sign change on [{lo}, {hi}] (F(lo) = {f_lo}, F(hi) = {f_hi})")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("root finder exceeded {0} iterations")]
    MaxIterationsExceeded(usize),
    #[error("predicate is not monotone: true at r = {true_at} after false at r = {false_at}")]
    PredicateNotMonotone { false_at: f64, true_at: f64 },
    #[error("bisection needs pred(lo) = true and pred(hi) = false")]
    BadBracket,
    #[error("adaptive quadrature exceeded depth {0} without meeting tolerance")]
    QuadratureFailure(usize),
    #[error("truncated series not converged at r = {r}: order-doubling changed the value by {delta:e}")]
    TruncationNotConverged { r: f64, delta: f64 },
}

/// Crate-wide error.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Psi(#[from] PsiError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("t-grid too coarse: adjacent boundary samples differ by {gap} (limit {limit})")]
    GridTooCoarse { gap: f64, limit: f64 },
    #[error("evaluator singular at z = {z}")]
    EvaluatorSingularity { z: Complex64 },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
