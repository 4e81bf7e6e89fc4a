use thiserror::Error;

/// Errors raised by the engine.
///
/// Some variants (`SymmetryViolation`, `InconsistentProfile`, `CaseMismatch`)
/// can only fire on an arithmetic bug, because the properties they guard are
/// theorems. They carry enough data to reproduce the failure.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("prime {p} divides a denominator (or is not prime)")]
    BadPrime { p: u64 },
    #[error("linear form does not divide the polynomial")]
    NotDivisible,
    #[error("the polynomial vanishes identically on the line")]
    ZeroRestriction,
    #[error("the line is a component of the curve")]
    LineIsComponent,
    #[error("curve is not reduced")]
    NotReduced,
    #[error("polynomial is not homogeneous: term `{term}` has degree {found}, expected {expected}")]
    NotHomogeneous { term: String, expected: u32, found: u32 },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("Milnor algebra dimension did not stabilize: {at_t} at T vs {at_t1} at T+1")]
    NotStabilized { at_t: u64, at_t1: u64 },
    #[error("Jacobian module symmetry violated: n({a}) = {na} but n({b}) = {nb}")]
    SymmetryViolation { a: usize, b: usize, na: u64, nb: u64 },
    #[error("Jacobian module unimodality violated at degree {k}")]
    UnimodalityViolation { k: usize },
    #[error("syzygy scan bound {bound} too small to certify the generator degrees")]
    BoundTooSmall { bound: u32 },
    #[error("inconsistent syzygy profile: {0}")]
    InconsistentProfile(String),
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("singularity is not isolated (no stabilization up to truncation order {cap})")]
    NonIsolated { cap: u32 },
    #[error("curves share a component through the point")]
    SharedComponent,
    #[error("curve is not free")]
    NotFree,
    #[error("predicted case {predicted} but observed {observed}\n{dump}")]
    CaseMismatch { predicted: u8, observed: String, dump: String },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("degree {0} is too small (need a plane curve of degree >= 1)")]
    DegreeTooSmall(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
