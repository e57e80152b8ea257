use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Invalid `(p, N, M)` triple.
    InvalidPrecision(String),
    /// Operands carry different precisions.
    PrecisionMismatch,
    /// The element is not invertible.
    NotAUnit,
    /// Every stored coefficient is divisible by `p`.
    NoPreparation,
    /// The `T`-adic truncation is too short for the requested object.
    InsufficientTruncation { needed: usize, available: usize },
    /// A requested `p`-adic level exceeds the working precision.
    InsufficientPrecision { needed: u32, available: u32 },
    NotDistinguished(String),
    InvalidModule(String),
    /// The group order does not divide `p - 1`.
    UnsupportedGroup { order: u32, p: u64 },
    GroupMismatch { expected: u32, found: u32 },
    /// The Gram matrix is singular modulo `p`.
    NotPerfect,
    InvalidSubgroup(String),
    IncompleteDatum(String),
    OracleInconclusive(String),
    /// Datum validation failed; one entry per violated field.
    InvalidDatum(Vec<String>),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPrecision(msg) => write!(f, "invalid precision: {msg}"),
            Error::PrecisionMismatch => f.write_str("precision mismatch"),
            Error::NotAUnit => f.write_str("not a unit"),
            Error::NoPreparation => {
                f.write_str("no Weierstrass preparation: every coefficient is divisible by p")
            }
            Error::InsufficientTruncation { needed, available } => write!(
                f,
                "insufficient truncation: need T-adic order > {needed}, have {available}"
            ),
            Error::InsufficientPrecision { needed, available } => write!(
                f,
                "insufficient p-adic precision: need {needed}, have {available}"
            ),
            Error::NotDistinguished(msg) => write!(f, "not a distinguished polynomial: {msg}"),
            Error::InvalidModule(msg) => write!(f, "invalid module: {msg}"),
            Error::UnsupportedGroup { order, p } => {
                write!(f, "unsupported group: g must divide p-1 (g = {order}, p = {p})")
            }
            Error::GroupMismatch { expected, found } => {
                write!(f, "group mismatch: expected order {expected}, found {found}")
            }
            Error::NotPerfect => f.write_str("pairing is not perfect: Gram determinant is divisible by p"),
            Error::InvalidSubgroup(msg) => write!(f, "invalid subgroup: {msg}"),
            Error::IncompleteDatum(msg) => write!(f, "incomplete datum: {msg}"),
            Error::OracleInconclusive(msg) => write!(f, "oracle inconclusive: {msg}"),
            Error::InvalidDatum(errs) => {
                f.write_str("invalid datum:")?;
                for e in errs {
                    write!(f, "\n  - {e}")?;
                }
                Ok(())
            }
        }
    }
}

impl core::error::Error for Error {}
