use thiserror::Error;

/// Errors raised by the symbol, billiards, and puzzle routines.
///
/// Almost every variant is a rejected precondition; the two exceptions are
/// [`Error::EulerInconsistent`] and [`Error::NotUniquelySolvable`], which
/// report mathematical facts about the input rather than malformed calls.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("{base}^(({p}-1)/2) = {value} (mod {p}) is neither 1 nor -1")]
    EulerInconsistent { base: u64, p: u64, value: u64 },

    #[error("denominator must be odd, got {0}")]
    EvenDenominator(u64),

    #[error("gcd({m}, {n}) = {gcd}, expected coprime arguments")]
    NotCoprime { m: u64, n: u64, gcd: u64 },

    #[error("gcd({m}, {n}) = 1, expected a common factor")]
    Coprime { m: u64, n: u64 },

    #[error("{p} divides {a}")]
    Divisible { a: i64, p: u64 },

    #[error("time {t} is outside [0, {end}]")]
    TimeOutOfRange { t: u64, end: u64 },

    #[error("the path has no base bounce at ({x}, 0)")]
    NoBaseBounce { x: u64 },

    #[error("board {rows}x{cols} has no unique solutions (gcd({m}, {n}) > 1)")]
    NotUniquelySolvable { rows: usize, cols: usize, m: u64, n: u64 },

    #[error("square ({col}, {row}) is not a {expected} square of the {rows}x{cols} board")]
    BadSquare {
        col: usize,
        row: usize,
        rows: usize,
        cols: usize,
        expected: &'static str,
    },

    #[error("{cells} cells exceed the brute-force tiling bound of {limit}; use the parity-only check")]
    TilingBoundExceeded { cells: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
