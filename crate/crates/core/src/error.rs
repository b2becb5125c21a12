use thiserror::Error;

/// Which structural property of a character a routine required.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharacterRequirement {
    NonPrincipal,
    Primitive,
    Real,
    Even,
    Odd,
    ModulusAboveOne,
}

impl std::fmt::Display for CharacterRequirement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Self::NonPrincipal => "non-principal",
            Self::Primitive => "primitive",
            Self::Real => "real",
            Self::Even => "even",
            Self::Odd => "odd",
            Self::ModulusAboveOne => "modulus > 1",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function} has a pole at s = {at}")]
    Pole { function: &'static str, at: String },

    #[error("character must be {0}")]
    Character(CharacterRequirement),

    #[error("expansion is not defined at half-integer s = {0}")]
    HalfInteger(f64),

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("truncation insufficient: tail estimate {tail:e} exceeds {tolerance:e}")]
    TruncationInsufficient { tail: f64, tolerance: f64 },

    #[error("error sample {index} is not positive; the expansion terminated exactly")]
    ExactTermination { index: usize },

    #[error("invalid identity request: {0}")]
    InvalidIdentity(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(what: &'static str, detail: impl Into<String>) -> Error {
    Error::OutOfRange {
        what,
        detail: detail.into(),
    }
}
