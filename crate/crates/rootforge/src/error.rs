use thiserror::Error;

/// Errors raised by the library. Each variant corresponds to a domain failure of
/// one operation; usage errors are handled by the CLI parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("zero vector")]
    ZeroVector,
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a versor: reverse(A)·A is not a scalar")]
    NotAVersor,
    #[error("not a unit bivector: B² ≠ −1")]
    NotUnitBivector,
    #[error("not a unit rotor")]
    NotUnitRotor,
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("closure budget exceeded: more than {0} elements")]
    ClosureBudgetExceeded(usize),
    #[error("simple roots cannot be normalized to unit length")]
    NonUnitSimples,
    #[error("eigensolver failure: {0}")]
    EigensolverFailure(String),
    #[error("bivector factorization failed: {0}")]
    FactorizationFailure(String),
    #[error("root system is not irreducible")]
    NotIrreducible,
    #[error("unrecognized root system type: {0}")]
    UnrecognizedType(String),
    #[error("root system axiom violated: {0}")]
    AxiomViolation(String),
    #[error("reduced inner product is degenerate for every reduction scheme")]
    ReducedFormDegenerate,
    #[error("no diagram folding found for {0}")]
    FoldingNotFound(String),
    #[error("no valid fullerene shell within the search grid (step {step}, start {start})")]
    NoValidShell { start: String, step: usize },
    #[error("solid has no faces")]
    NoFaces,
    #[error("built-in data failed validation: {0}")]
    ValidationFailure(String),
    #[error("vertex set is not invariant under the group")]
    NotInvariant,
    #[error("non-integral multiplicity: {0}")]
    NonIntegralMultiplicity(String),
    #[error("identity violated: {0}")]
    IdentityViolation(String),
    #[error("no matching diagram: {0}")]
    NoMatch(String),
    #[error("graph too large: {0} vertices (cap {1})")]
    GraphTooLarge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
