use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An index or parameter is outside the domain of the operation.
    Domain(&'static str),
    /// Matrix shapes do not agree.
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    NotSquare {
        rows: usize,
        cols: usize,
    },
    NotUnimodular,
    /// A message entry is zero or negative.
    NonPositiveEntry {
        row: usize,
        col: usize,
    },
    ZeroDenominator,
    /// The operation is only defined for a narrower parameter set (usually p = 1).
    Unsupported(&'static str),
    UnknownSymbol {
        symbol: char,
        position: usize,
    },
    ValueOutOfRange(u32),
    /// A block whose withheld entry cannot be recovered (b3 = 0).
    UnrecoverableBlock {
        block: usize,
    },
    /// A K-package record that does not decode to a table value.
    CorruptedBlock {
        block: usize,
    },
    InvalidPackage(&'static str),
    InvalidConfig(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {}x{}, found {}x{}", expected.0, expected.1, found.0, found.1)
            }
            Error::NotSquare { rows, cols } => write!(f, "matrix is not square ({rows}x{cols})"),
            Error::NotUnimodular => write!(f, "matrix is not unimodular"),
            Error::NonPositiveEntry { row, col } => {
                write!(f, "message entry at ({row}, {col}) is not a positive integer")
            }
            Error::ZeroDenominator => write!(f, "zero denominator"),
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
            Error::UnknownSymbol { symbol, position } => {
                write!(f, "unsupported character {symbol:?} at position {position}")
            }
            Error::ValueOutOfRange(v) => write!(f, "value {v} is outside the table range 0..=28"),
            Error::UnrecoverableBlock { block } => {
                write!(f, "unrecoverable block {block}: b3 is zero")
            }
            Error::CorruptedBlock { block } => write!(f, "corrupted package at block {block}"),
            Error::InvalidPackage(why) => write!(f, "invalid package: {why}"),
            Error::InvalidConfig(why) => write!(f, "invalid channel config: {why}"),
        }
    }
}

impl core::error::Error for Error {}
