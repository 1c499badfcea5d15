use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Modulus of a prime field is not prime or out of the supported range.
    NotPrime(u64),
    /// The extension modulus is not monic or not irreducible.
    Reducible,
    /// Operands come from different fields.
    FieldMismatch,
    /// Dimensions are inconsistent or out of range.
    InvalidDimensions(&'static str),
    /// A precondition of an attack does not hold for the given parameters.
    Precondition(&'static str),
    /// The linearized system has the wrong kernel dimension.
    RankDeficient { rank: usize, cols: usize },
    /// The linearized system has no nonzero solution.
    NoSolution,
    /// A reconstructed solution did not pass the final check.
    VerificationFailed,
    /// Exhaustive guessing finished without a verified solution.
    NotFound,
    /// Every candidate pivot monomial evaluated to zero.
    NoPivot,
    /// A brute-force search would exceed the configured bound.
    Infeasible { count: u128, bound: u128 },
    /// A randomized solver ran out of attempts.
    RetriesExhausted,
    /// The systematic form of the extended code does not exist.
    NotSystematic,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(q) => write!(f, "{q} is not a supported prime"),
            Error::Reducible => f.write_str("modulus is not a monic irreducible polynomial"),
            Error::FieldMismatch => f.write_str("operands belong to different fields"),
            Error::InvalidDimensions(what) => write!(f, "invalid dimensions: {what}"),
            Error::Precondition(what) => write!(f, "precondition violated: {what}"),
            Error::RankDeficient { rank, cols } => {
                write!(f, "rank deficient system: rank {rank} with {cols} columns")
            }
            Error::NoSolution => f.write_str("linear system has no nonzero solution"),
            Error::VerificationFailed => f.write_str("recovered solution failed verification"),
            Error::NotFound => f.write_str("no solution found"),
            Error::NoPivot => f.write_str("no nonzero pivot monomial in kernel vector"),
            Error::Infeasible { count, bound } => {
                write!(f, "search space of {count} exceeds bound {bound}")
            }
            Error::RetriesExhausted => f.write_str("retry limit exhausted"),
            Error::NotSystematic => f.write_str("extended code has no systematic form"),
        }
    }
}

impl core::error::Error for Error {}
