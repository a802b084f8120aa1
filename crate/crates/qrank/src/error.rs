//! Error type shared by all modules of the crate.

use std::fmt;

/// Everything that can go wrong in the library.
///
/// Variants are named after the precondition they report; the `Display`
/// impl spells out the offending value so CLI error messages can be
/// emitted verbatim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A square was passed where a nonsquare radicand is required.
    PerfectSquareInput(u64),
    /// The input must be at least 2 (or otherwise positive).
    NonPositiveInput(String),
    /// A surd turned out to be rational (its radicand is a perfect square).
    RationalInput,
    /// The fixed-point quadratic of a periodic tail has no positive
    /// irrational root.
    DegeneratePeriod,
    /// Right-hand side outside {1, -1, 2, -2}.
    UnsupportedRhs(i64),
    /// Primality was required.
    NotPrime(u64),
    /// An odd prime was required.
    EvenPrime,
    /// The prime is in the wrong residue class for the operation.
    WrongResidue { p: u64, expected: &'static str },
    /// Period length must be even for midpoint analysis.
    OddPeriod(usize),
    /// The dimension search could not even re-establish the unperturbed
    /// solution inside its completion window.
    WindowTooSmall,
    /// The tuple does not satisfy the period diophantine equation.
    NotASolution,
    /// The last period entry is odd, i.e. the (sqrt(D)+1)/2 branch where
    /// the closed radicand formula does not apply.
    OddXp,
    /// Internal: a continuant denominator vanished.
    ZeroDenominator,
    /// Discriminant of a quadratic form must be negative and 0 or 1 mod 4.
    InvalidDiscriminant(i64),
    /// Matrix entries of a lattice endomorphism must be integers.
    NonIntegralEntry,
    /// Symbolic Muir symbols are only kept for short periods.
    SymbolicTooLarge(usize),
    /// Text that does not parse as a continued fraction.
    ParseCf(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::PerfectSquareInput(d) => write!(f, "{d} is a perfect square"),
            Error::NonPositiveInput(what) => write!(f, "input out of range: {what}"),
            Error::RationalInput => write!(f, "surd is rational (radicand is a perfect square)"),
            Error::DegeneratePeriod => {
                write!(f, "periodic tail has no positive irrational fixed point")
            }
            Error::UnsupportedRhs(r) => {
                write!(f, "right-hand side {r} not in {{1, -1, 2, -2}}")
            }
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::EvenPrime => write!(f, "p must be an odd prime"),
            Error::WrongResidue { p, expected } => {
                write!(f, "{p} is not congruent to {expected}")
            }
            Error::OddPeriod(len) => write!(f, "period length {len} is odd"),
            Error::WindowTooSmall => {
                write!(f, "no unperturbed solution found within the completion window")
            }
            Error::NotASolution => write!(f, "tuple does not solve the period equation"),
            Error::OddXp => write!(f, "last period entry is odd; closed radicand formula only applies to the sqrt(D) branch"),
            Error::ZeroDenominator => write!(f, "continuant denominator is zero"),
            Error::InvalidDiscriminant(d) => {
                write!(f, "{d} is not a negative discriminant congruent to 0 or 1 mod 4")
            }
            Error::NonIntegralEntry => {
                write!(f, "multiplier does not give an integer endomorphism matrix")
            }
            Error::SymbolicTooLarge(p) => {
                write!(f, "symbolic Muir symbols unsupported for period length {p} > 16")
            }
            Error::ParseCf(s) => write!(f, "cannot parse continued fraction from {s:?}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
