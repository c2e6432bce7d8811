use alloc::string::String;
use core::fmt;

/// Failure modes shared by every layer of the library.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    IllFormedAtom(String),
    DuplicateCoordinate(String),
    DomainPole(String),
    UnboundSymbol(String),
    ChartMismatch,
    DegreeZero,
    BadAssignment(String),
    NonExactSubstitution(String),
    NonMonomial(String),
    PoleOnRegion(String),
    NotTopDegree,
    ZeroVolume,
    EmptyRegion,
    BadRegion(String),
    VanishingForm(String),
    PathEscapedRegion(String),
    MaxStepsExceeded(String),
    NotTransverse(String),
    BadBlendRange(String),
    CurveThroughOrigin(String),
    PositivityNotFound(String),
    ProfileViolation(String),
    BadIndex(String),
    IllegalStep(String),
    BadSlice(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IllFormedAtom(s) => write!(f, "ill-formed atom: {s}"),
            Error::DuplicateCoordinate(s) => write!(f, "duplicate coordinate name `{s}`"),
            Error::DomainPole(s) => write!(f, "pole at evaluation point: {s}"),
            Error::UnboundSymbol(s) => write!(f, "unbound symbol: {s}"),
            Error::ChartMismatch => f.write_str("operands live on different charts"),
            Error::DegreeZero => f.write_str("interior product of a 0-form"),
            Error::BadAssignment(s) => write!(f, "bad assignment: {s}"),
            Error::NonExactSubstitution(s) => write!(f, "substitution leaves the exact class: {s}"),
            Error::NonMonomial(s) => write!(f, "expected a single-term expression: {s}"),
            Error::PoleOnRegion(s) => write!(f, "pole on region: {s}"),
            Error::NotTopDegree => f.write_str("form is not of top degree"),
            Error::ZeroVolume => f.write_str("volume form is zero"),
            Error::EmptyRegion => f.write_str("region has no samples"),
            Error::BadRegion(s) => write!(f, "bad region: {s}"),
            Error::VanishingForm(s) => write!(f, "form vanishes at {s}"),
            Error::PathEscapedRegion(s) => write!(f, "flow path left the region from {s}"),
            Error::MaxStepsExceeded(s) => write!(f, "no arrival within the step budget from {s}"),
            Error::NotTransverse(s) => write!(f, "vector field not transverse: {s}"),
            Error::BadBlendRange(s) => write!(f, "blend function outside [0,1]: {s}"),
            Error::CurveThroughOrigin(s) => write!(f, "profile curve passes through the origin: {s}"),
            Error::PositivityNotFound(s) => write!(f, "positivity not found: {s}"),
            Error::ProfileViolation(s) => write!(f, "profile condition violated: {s}"),
            Error::BadIndex(s) => write!(f, "bad index: {s}"),
            Error::IllegalStep(s) => write!(f, "illegal surgery step: {s}"),
            Error::BadSlice(s) => write!(f, "bad slice: {s}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
