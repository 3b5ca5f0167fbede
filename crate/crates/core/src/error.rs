use thiserror::Error;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KqError {
    #[error("pfaffian needs an even size, got {0}")]
    OddPfaffianSize(usize),

    #[error("wick expectation needs an even number of fermions, got {0}")]
    OddWickLength(usize),

    #[error("parts {0:?} do not form a strict partition")]
    NotStrict(Vec<u32>),

    #[error("parts {0:?} do not form a partition")]
    NotPartition(Vec<u32>),

    #[error("degree bounds differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("weight {weight} exceeds the degree bound {degree}")]
    WeightExceedsDegree { weight: usize, degree: usize },

    #[error("polynomial is not symmetric in its {0} variables")]
    NotSymmetric(usize),

    #[error("{vars} variables cannot resolve power sums up to degree {degree}")]
    UnderDetermined { vars: usize, degree: usize },

    #[error("too many variables for the symmetrization oracle: {0} (max 8)")]
    TooManyVariables(usize),

    #[error("symmetrization oracle produced a non-polynomial result for {0}")]
    OracleNotPolynomial(String),

    #[error("exponent {exponent} of variable {var} lies outside window [{lo}, {hi}]")]
    OutsideWindow { var: usize, exponent: i64, lo: i64, hi: i64 },

    #[error("blocks have incompatible variable layouts")]
    BlockMismatch,

    #[error("kernel expansion has no positive powers of the leading variable; window reaches {0}")]
    KernelWindow(i64),

    #[error("b_{0} cannot act on this side of the Fock space")]
    WrongSideHeisenberg(i64),

    #[error("Heisenberg generator b_{0} requires an odd index")]
    EvenHeisenberg(i64),

    #[error("series has support on the non-odd partition {0:?} in the {1} basis")]
    EvenSupport(Vec<u32>, &'static str),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("input must be a polynomial for this operation")]
    NotFinite,
}

pub type Result<T> = std::result::Result<T, KqError>;
