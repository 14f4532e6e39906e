use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in this crate.
///
/// All variants except [`Error::Invariant`] are caller errors. `Invariant`
/// means a computed value disagreed with a property that the underlying
/// mathematics guarantees, which points at a bug rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is not a unit modulo {modulus}")]
    NotUnit { value: u128, modulus: u128 },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u128),

    #[error("{0} is not an odd prime power")]
    NotOddPrimePower(u128),

    #[error("modulus {0} is outside the word budget (its square overflows)")]
    Overflow(u128),

    #[error("2 is not a primitive root modulo {0}")]
    TwoNotPrimitive(u128),

    #[error("{value} is not a primitive root modulo {modulus}")]
    NotPrimitiveRoot { value: u128, modulus: u128 },

    #[error("denominator {0} must be odd and positive")]
    EvenDenominator(i128),

    #[error("decimation factor {d} is not coprime to period {period}")]
    NotCoprime { d: usize, period: usize },

    #[error("period mismatch: {left} vs {right}")]
    PeriodMismatch { left: usize, right: usize },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u128, right: u128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}
