use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid ring parameters: {0}")]
    InvalidRing(String),
    #[error("modulus is not basic primitive: {0}")]
    ModulusNotBasicPrimitive(String),
    #[error("automorphism exponent {e} must satisfy 0 <= e < m = {m}")]
    BadAutomorphismExponent { e: usize, m: usize },
    #[error("operands belong to different rings")]
    MixedRings,
    #[error("element literal has {got} coefficients, ring expects at most {expected}")]
    ElementLength { expected: usize, got: usize },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("subring degree {sub} does not divide extension degree {ext}")]
    DegreeMismatch { sub: usize, ext: usize },
    #[error("element is not in the base subring")]
    NotInSubring,
    #[error("divisor has a non-unit leading coefficient")]
    NonUnitLeadingCoefficient,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("roots are dependent: intermediate evaluation at root {index} is not a unit")]
    DependentRoots { index: usize },
    #[error("root {index} is already a right root of the partial product")]
    DuplicateRoot { index: usize },
    #[error("length {n} is divisible by the characteristic prime {p}")]
    CharacteristicDividesLength { n: usize, p: u64 },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("degree {0} is too small, need at least 2")]
    DegreeTooSmall(usize),
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unsupported exponent-set shape {0:?}")]
    UnsupportedShape(Vec<usize>),
    #[error("ring characteristic is not the prime {0}")]
    CharacteristicMismatch(u64),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("element {index} of the perturbation is not nilpotent")]
    NotNilpotent { index: usize },
    #[error("base polynomial does not give an MDS chain")]
    BaseNotMds,
    #[error("construction family requires the field case s = 1")]
    RequiresFieldCase,
    #[error("enumeration of {size} candidates exceeds the budget of {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error("polynomial is not a right divisor of X^{0} - 1")]
    NotRightDivisor(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parameters too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}
