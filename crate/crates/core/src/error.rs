use alloc::string::String;
use core::fmt;

/// Crate-wide error type. Several variants are correctness tripwires: they
/// signal an internal contradiction (a convention bug) rather than bad input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Exact division failed; the dividend is not a multiple of the divisor.
    NotDivisible,
    /// A denominator factor collapsed to 1 - 1 under substitution.
    ZeroDenominator,
    /// Permutations of different sizes were composed.
    SizeMismatch { left: usize, right: usize },
    /// A state violates the recursion's preconditions.
    InvalidState(String),
    /// A state recurred on the active recursion stack. The recursion is
    /// provably well-founded, so this means a convention bug.
    CycleDetected(String),
    /// The recursion exceeded its configured depth bound.
    DepthExceeded { limit: usize },
    /// A generator index was outside 1..n for the ambient algebra.
    IndexOutOfRange { index: usize, strands: usize },
    /// A braid closure value failed to simplify to a Laurent polynomial.
    NonPolynomialResult,
    /// A textual word, permutation, or value failed to parse.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotDivisible => write!(f, "exact division failed: not divisible"),
            Error::ZeroDenominator => write!(f, "denominator factor became 1 - 1"),
            Error::SizeMismatch { left, right } => {
                write!(f, "permutation size mismatch: {left} vs {right}")
            }
            Error::InvalidState(msg) => write!(f, "invalid state: {msg}"),
            Error::CycleDetected(msg) => write!(f, "cycle detected in recursion: {msg}"),
            Error::DepthExceeded { limit } => {
                write!(f, "recursion depth exceeded limit {limit}")
            }
            Error::IndexOutOfRange { index, strands } => {
                write!(f, "generator index {index} out of range for {strands} strands")
            }
            Error::NonPolynomialResult => {
                write!(f, "closure value did not simplify to a Laurent polynomial")
            }
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
