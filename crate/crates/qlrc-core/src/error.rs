//! Error type shared by every module in the crate.
//!
//! Variants are deliberately fine-grained: callers (and the CLI exit-code
//! mapping) distinguish usage mistakes from mathematical failures, and tests
//! assert on specific variants rather than on message strings.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // field construction
    #[error("characteristic must be an odd prime, got {0}")]
    NotOddPrime(u64),
    #[error("no built-in modulus for GF({p}^{m}); supply one explicitly")]
    NoModulusKnown { p: u64, m: u32 },
    #[error("supplied modulus is not irreducible of the stated degree")]
    ReducibleModulus,
    #[error("field order is not a perfect square; no conjugation available")]
    NonSquareOrder,
    #[error("{r} does not divide the group order {order}")]
    NotADivisor { r: u64, order: u64 },

    // linear algebra
    #[error("matrix is singular")]
    Singular,
    #[error("matrix does not have full row rank")]
    NotFullRank,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("generator matrix is zero")]
    ZeroMatrix,
    #[error("matrix is not non-singular by columns")]
    NotNsc,

    // codes
    #[error("codes are not nested")]
    NotNested,
    #[error("hatted code is not an enlargement of its base code")]
    NotEnlargement,
    #[error("constituent is not a subcode of the recovery supercode")]
    NotSubcode,
    #[error("the matrix row-space has no verified recovery structure")]
    UnverifiedMatrixStructure,
    #[error("code has a zero column; locality checks need nondegeneracy")]
    Degenerate,
    #[error("coordinate {coord} is outside its recovery set")]
    CoordinateNotInSet { coord: usize },
    #[error("recovery set is empty")]
    EmptySet,
    #[error("code is not dual-containing under the {0} form")]
    NotDualContaining(&'static str),
    #[error("cannot certify delta <= dual distance (best bound {bound})")]
    DeltaConditionUnverified { bound: u32 },
    #[error("2k - n = {0} is negative; no quantum code")]
    NegativeQuantumDimension(i64),
    #[error("stated quantum dimension disagrees with 2k - n")]
    InconsistentDimensions,

    // family construction
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("constructed parameters disagree with the claimed formula: {0}")]
    ClaimMismatch(String),
    #[error("construction search exhausted without a verified witness: {0}")]
    ConstructionFailed(String),
    #[error("no usable evaluation point remains in the field")]
    FieldExhausted,
    #[error("matrix wider than the field order")]
    TooWide,
    #[error("code longer than the field order")]
    TooLong,
    #[error("evaluation points repeat")]
    RepeatedPoint,
    #[error("column multiplier is zero")]
    ZeroMultiplier,
    #[error("{what} = {got} is outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        got: i64,
        lo: i64,
        hi: i64,
    },
    #[error("row count {got} is outside ({lo}, {hi}]")]
    RowCountOutOfRange { got: usize, lo: usize, hi: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("argument must be positive")]
    NonPositive,
    #[error("field order {0} is not supported here")]
    UnsupportedField(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
