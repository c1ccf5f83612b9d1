use thiserror::Error;

use crate::rational::Rational;

/// Errors raised by instance construction, copula evaluation and the
/// identification / verification routines.
///
/// Menu indices carried by variants are zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid reference order: {0}")]
    InvalidOrder(String),

    #[error("invalid menu {menu}: {reason}")]
    InvalidMenu { menu: usize, reason: String },

    #[error("invalid mass in menu {menu}: {reason}")]
    InvalidMass { menu: usize, reason: String },

    #[error("unknown alternative `{name}`{}", .menu.map(|m| format!(" in menu {m}")).unwrap_or_default())]
    UnknownAlternative { name: String, menu: Option<usize> },

    #[error("type space has {types} choice types, above the cap of {cap}")]
    TooLarge { types: u128, cap: u128 },

    #[error("arity mismatch: expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("coordinate {index} = {value} lies outside [0, 1]")]
    OutOfUnitInterval { index: usize, value: Rational },

    #[error("grid is empty or malformed: {0}")]
    EmptyGrid(String),

    #[error("distribution does not represent the instance: {0}")]
    NotARepresentation(String),

    #[error("mistake mass {deficit} exceeds 1")]
    NotOneMistake { deficit: Rational },

    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("invalid copula spec at byte {offset}: {reason}")]
    InvalidCopula { offset: usize, reason: String },

    #[error("invalid choice type: {0}")]
    InvalidType(String),

    #[error("invalid type distribution: {0}")]
    InvalidDistribution(String),

    #[error("linear program: {0}")]
    Lp(String),
}

impl Error {
    /// Stable machine-readable code for reports and the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidOrder(_) => "E_INVALID_ORDER",
            Error::InvalidMenu { .. } => "E_INVALID_MENU",
            Error::InvalidMass { .. } => "E_INVALID_MASS",
            Error::UnknownAlternative { .. } => "E_UNKNOWN_ALTERNATIVE",
            Error::TooLarge { .. } => "E_TOO_LARGE",
            Error::ArityMismatch { .. } => "E_ARITY_MISMATCH",
            Error::OutOfUnitInterval { .. } => "E_OUT_OF_UNIT_INTERVAL",
            Error::EmptyGrid(_) => "E_EMPTY_GRID",
            Error::NotARepresentation(_) => "E_NOT_A_REPRESENTATION",
            Error::NotOneMistake { .. } => "E_NOT_ONE_MISTAKE",
            Error::InvalidRational(_) => "E_INVALID_RATIONAL",
            Error::InvalidCopula { .. } => "E_INVALID_COPULA",
            Error::InvalidType(_) => "E_INVALID_TYPE",
            Error::InvalidDistribution(_) => "E_INVALID_DISTRIBUTION",
            Error::Lp(_) => "E_INTERNAL_LP",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
