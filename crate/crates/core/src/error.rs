use alloc::string::String;
use core::fmt;

/// Errors raised by the arithmetic layer and the audit gates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// `D` must be a squarefree integer greater than one.
    NotSquarefree(i64),
    InvalidDiscriminant(i64),
    ZeroNotFactorable,
    /// A norm had a cofactor that trial division plus the primality test
    /// could not resolve.
    FactorizationIncomplete {
        cofactor: String,
    },
    /// A rational prime (or a residue-field order) exceeds the supported width.
    PrimeTooLarge(String),
    CharacteristicTwo,
    /// Orders and inverses are undefined at zero.
    ZeroElement,
    NotPrime(u64),
    /// The `{p, degree, root}` data does not describe a prime of the field.
    InvalidPrimeIdeal(String),
    /// The generator does not generate a prime ideal.
    NotPrimeGenerator(String),
    UnsupportedField(String),
    FieldMismatch(String),
    RamifiedPrime(String),
    /// An eigenvalue needed by a gate is not present in the table.
    NoData(String),
    /// The prime divides the extension's radicand.
    RamifiedInExtension(String),
    WeightParity {
        k1: i64,
        k2: i64,
    },
    WeightTooSmall(i64),
    WeightLength(usize),
    LevelNotProper,
    DuplicatePrime(String),
    UnsupportedNebentypus(String),
    NotSpecialPlace(String),
    NoCommonPrimes,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotSquarefree(d) => write!(f, "D = {d} is not squarefree"),
            Error::InvalidDiscriminant(d) => write!(f, "D = {d} must be greater than 1"),
            Error::ZeroNotFactorable => write!(f, "cannot factor zero"),
            Error::FactorizationIncomplete { cofactor } => {
                write!(f, "factorization incomplete: unresolved cofactor {cofactor}")
            }
            Error::PrimeTooLarge(s) => write!(f, "value too large for word arithmetic: {s}"),
            Error::CharacteristicTwo => write!(f, "characteristic 2 is not supported"),
            Error::ZeroElement => write!(f, "element is zero in the residue field"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::InvalidPrimeIdeal(s) => write!(f, "invalid prime ideal: {s}"),
            Error::NotPrimeGenerator(s) => write!(f, "{s} does not generate a prime ideal"),
            Error::UnsupportedField(s) => write!(f, "unsupported field: {s}"),
            Error::FieldMismatch(s) => write!(f, "field mismatch: {s}"),
            Error::RamifiedPrime(s) => write!(f, "prime {s} is ramified"),
            Error::NoData(s) => write!(f, "no eigenvalue data at {s}"),
            Error::RamifiedInExtension(s) => write!(f, "prime {s} ramifies in the extension"),
            Error::WeightParity { k1, k2 } => {
                write!(f, "weight ({k1}, {k2}) violates the parity condition")
            }
            Error::WeightTooSmall(k) => write!(f, "weight component {k} is below 2"),
            Error::WeightLength(n) => write!(f, "weight has {n} components, expected 2"),
            Error::LevelNotProper => write!(f, "level must be a nonzero non-unit"),
            Error::DuplicatePrime(s) => write!(f, "duplicate eigenvalue row for {s}"),
            Error::UnsupportedNebentypus(s) => write!(f, "unsupported nebentypus {s:?}"),
            Error::NotSpecialPlace(s) => {
                write!(
                    f,
                    "place {s} divides the level to order > 1: not special, unsupported place type"
                )
            }
            Error::NoCommonPrimes => write!(f, "eigenvalue tables share no primes"),
        }
    }
}

impl core::error::Error for Error {}
