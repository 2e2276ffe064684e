use thiserror::Error;

/// Errors raised by the library. Every variant is a domain error: it
/// describes an input that violates a mathematical precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u64, right: u64 },

    #[error("length mismatch: expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("poset too large: {size} elements exceeds cap {cap}")]
    PosetTooLarge { size: String, cap: usize },

    #[error("monomial of degree {found} does not belong to a poset of degree {expected}")]
    WrongDegree { expected: u32, found: u32 },

    #[error("not a filter: the set is not up-closed")]
    NotAFilter,

    #[error("not Borel-fixed")]
    NotBorelFixed,

    #[error("not a Hilbert polynomial: {0}")]
    NotAHilbertPolynomial(String),

    #[error("Hilbert polynomial interpolation disagrees at degree {degree}")]
    InterpolationMismatch { degree: u64 },

    #[error("wrong cardinality: expected {expected} monomials, found {found}")]
    WrongCardinality { expected: String, found: usize },

    #[error("monomial already lies in the filter")]
    MonomialInFilter,

    #[error("not a Hilbert point: {0}")]
    NotAHilbertPoint(String),

    #[error("limit point reached, no direction")]
    NoDirection,

    #[error("minimal weight drop is attained by two distinct difference vectors")]
    DirectionTie,

    #[error("input forms are linearly dependent")]
    DependentForms,

    #[error("weight does not distinguish monomials of degree {degree}")]
    WeightNotDistinguishing { degree: u64 },

    #[error("weight is not strictly decreasing")]
    WeightNotDecreasing,

    #[error("base point is not fixed by the matrix")]
    NotFixedByAction,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("degree {m} is below the largest generator degree {max_generator_degree}")]
    DegreeTooSmall { m: u32, max_generator_degree: u32 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
