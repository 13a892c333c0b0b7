use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library reports. Variants are named after the broken
/// precondition so that callers (and the CLI) can surface them verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("modulus {0} is too large (must be below 2^31)")]
    ModulusTooLarge(u64),
    #[error("extension degree must be 1 or 2, got {0}")]
    BadDegree(u32),
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("a matrix tuple must contain at least one matrix")]
    EmptyTuple,
    #[error("tuple lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("expected a pair, got a {0}-tuple")]
    NotPair(usize),
    #[error("substitution matrix is singular")]
    SingularSubstitution,
    #[error("the hermitian family needs a field with a nonidentity involution (deg 2)")]
    HermitianNeedsExtension,
    #[error("the symmetric and skew families need the identity involution (deg 1)")]
    FamilyNeedsIdentityInvolution,
    #[error("characteristic {p} too small: need p > {needed}; raise p")]
    CharacteristicTooSmall { p: u64, needed: u64 },
    #[error("field of size {size} too small for randomized search (need at least {min})")]
    FieldTooSmall { size: u64, min: u64 },
    #[error("not an endomorphism: intertwining equations fail")]
    NotEndomorphism,
    #[error("witness does not verify: {0}")]
    WitnessInvalid(String),
    #[error("randomized search exhausted {0} trials; retry with a new seed")]
    TrialsExhausted(usize),
    #[error("matrices A and B are linearly dependent")]
    DependentPair,
    #[error("R^3 is not zero")]
    CubeNonzero,
    #[error("dim R^2 is {0}, expected 2")]
    SquareDim(usize),
    #[error("multiplication is not associative at basis triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("operation needs a unital algebra")]
    NotUnital,
    #[error("search space of size {size} exceeds the budget {budget}")]
    BudgetExceeded { size: u64, budget: u64 },
    #[error("exhaustive search needs a prime field (deg 1)")]
    NeedsPrimeField,
    #[error("scalar is not a square in the base field")]
    NotASquare,
    #[error("indecomposability could not be certified: {0}")]
    Uncertified(String),
    #[error("summand separation failed: {0}")]
    CommonSummand(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("stage {stage}: {source}")]
    Stage { stage: &'static str, source: Box<Error> },
}

impl Error {
    pub fn at(stage: &'static str) -> impl FnOnce(Error) -> Error {
        move |e| Error::Stage { stage, source: Box::new(e) }
    }
}
