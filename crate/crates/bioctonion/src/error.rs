// SPDX-License-Identifier: Apache-2.0
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("sum of monomials with different exponents")]
    NonMonomialSum,
    #[error("zero input")]
    ZeroInput,
    #[error("zero symbol slot")]
    ZeroSlot,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("degenerate Gram matrix")]
    DegenerateGram,
    #[error("zero diagonal entry")]
    ZeroEntry,
    #[error("dimension too small")]
    DimTooSmall,
    #[error("class not in the required ideal: {0}")]
    NotInIdeal(String),
    #[error("degenerate functional")]
    DegenerateFunctional,
    #[error("invalid dimensions {0:?}")]
    InvalidDims((usize, usize)),
    #[error("parameter is a square")]
    NotANonsquare,
    #[error("zero Cayley-Dickson parameter")]
    ZeroParameter,
    #[error("unexpected centroid dimension {0}")]
    UnexpectedCentroidDim(usize),
    #[error("algebra has no recorded provenance")]
    UnknownProvenance,
    #[error("elements do not belong to the same algebra")]
    MixedAlgebras,
    #[error("element is not conjugate invertible")]
    NotInvertible,
    #[error("basepoint has Q(s0) = 0")]
    BadBasepoint,
    #[error("delta does not have trace zero")]
    DeltaNotTraceZero,
    #[error("form is not a 14-dimensional form in I^3")]
    NotI14,
    #[error("form is not a 12-dimensional form in I^3")]
    NotI12,
    #[error("form is not in I^2")]
    NotI2,
    #[error("class h is not annihilated by (-1)")]
    HNotInJ1,
    #[error("parameterization not found within the search bound")]
    ParameterizationNotFound,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
