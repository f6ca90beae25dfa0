use thiserror::Error;

/// Errors shared by every module of the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate operation name `{0}` in signature")]
    DuplicateOpName(String),
    #[error("negative arity for operation `{0}`")]
    NegativeArity(String),
    #[error("unknown operation `{0}`")]
    UnknownOp(String),
    #[error("generator index {index} out of range (have {count} generators)")]
    GeneratorOutOfRange { index: usize, count: usize },
    #[error("term contains an action node but no representation was supplied")]
    ActWithoutRepresentation,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("signature mismatch")]
    SignatureMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("empty list of algebras")]
    EmptyList,
    #[error("partition is not a congruence: op `{op}` on tuples {tuple:?} ~ {other:?} yields inequivalent results")]
    NotACongruence {
        op: String,
        tuple: Vec<usize>,
        other: Vec<usize>,
    },
    #[error("kernel too small: {x} ~ {y} but images differ")]
    KernelTooSmall { x: usize, y: usize },
    #[error("action of {actor} is not coordinated with the congruence: {x} ~ {y} map to different classes")]
    NotCoordinated { actor: usize, x: usize, y: usize },
    #[error("representations do not share one actor algebra")]
    ActorMismatch,
    #[error("monoid unit does not act as the identity transformation")]
    MonoidUnitMismatch,
    #[error("representation is not in monoid mode")]
    NotMonoidMode,
    #[error("map is not a reduced polymorphism")]
    NotAReducedPolymorphism,
    #[error("tensor result is truncated; a complete result is required")]
    TruncatedResult,
    #[error("factorization inconsistent: generator tuple {tuple:?} evaluates to {expected} but its class maps to {actual}")]
    FactorizationInconsistent {
        tuple: Vec<usize>,
        expected: usize,
        actual: usize,
    },
    #[error("object `{0}` not found")]
    NameNotFound(String),
    #[error("parse error: {0}")]
    ParseError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
