//! Error type shared by every module of the core crate.

use core::fmt;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Failures of the numerical and indicator routines.
///
/// `Display` output starts with the error class name so that front ends can
/// surface it verbatim.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument lies on (or within 1e-12 of) a pole of the gamma function.
    Pole {
        /// Offending argument.
        z: f64,
    },
    /// Argument outside the mathematical domain of an operation.
    Domain(&'static str),
    /// Not enough samples for the requested stencil.
    InsufficientData {
        /// Minimum number of grid intervals required.
        needed: usize,
        /// Number of grid intervals supplied.
        got: usize,
    },
    /// A ratio's denominator is zero relative to its scale.
    DenominatorNearZero {
        /// Denominator value.
        value: f64,
        /// Threshold the value failed to exceed.
        threshold: f64,
    },
    /// An alpha sweep was requested with no orders.
    EmptySweep,
    /// Two series that must share a grid do not.
    GridMismatch,
    /// Time stamps are not uniformly spaced or do not start at zero.
    NonUniformGrid {
        /// Zero-based index of the first offending time stamp.
        index: usize,
    },
    /// Requested time does not coincide with a grid node.
    OffGrid {
        /// Requested time.
        t: f64,
    },
}

impl Error {
    /// Short class name, e.g. `"DomainError"`.
    pub fn class(&self) -> &'static str {
        match self {
            Error::Pole { .. } => "PoleError",
            Error::Domain(_) => "DomainError",
            Error::InsufficientData { .. } => "InsufficientData",
            Error::DenominatorNearZero { .. } => "DenominatorNearZero",
            Error::EmptySweep => "EmptySweep",
            Error::GridMismatch => "GridMismatch",
            Error::NonUniformGrid { .. } => "NonUniformGrid",
            Error::OffGrid { .. } => "OffGrid",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.class())?;
        match self {
            Error::Pole { z } => write!(f, "gamma has a pole at {z}"),
            Error::Domain(msg) => f.write_str(msg),
            Error::InsufficientData { needed, got } => {
                write!(f, "need at least {needed} grid intervals, got {got}")
            }
            Error::DenominatorNearZero { value, threshold } => {
                write!(f, "denominator {value:e} is within {threshold:e} of zero")
            }
            Error::EmptySweep => f.write_str("no orders to sweep"),
            Error::GridMismatch => f.write_str("series are not sampled on the same grid"),
            Error::NonUniformGrid { index } => {
                write!(f, "time stamp {index} breaks the uniform grid starting at 0")
            }
            Error::OffGrid { t } => write!(f, "time {t} is not a grid node"),
        }
    }
}

impl core::error::Error for Error {}
