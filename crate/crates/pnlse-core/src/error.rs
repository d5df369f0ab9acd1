//! Error types shared by all solver modules.

use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// sigma = +1 together with k >= 1: the transcendent diverges.
    DivergentRegime { k: f64 },
    /// The integrated solution exceeded the blow-up threshold.
    BlowUp { y: f64, phi: f64 },
    /// Argument outside the domain of an asymptotic form.
    DomainError(&'static str),
    /// Requested point lies outside the stored grid.
    OutOfRange { value: f64, min: f64, max: f64 },
    /// The potential has no classical turning point for this chemical potential.
    NoTurningPoint,
    /// q^2 changes sign strictly inside an action-integral interval.
    SignChange { x: f64 },
    /// mu inside (-|w|, |w|): the constant-potential map is undefined.
    ForbiddenWindow { mu: f64, w: f64 },
    /// The least-squares weight integral vanishes.
    DegeneratePhi,
    /// No sign change found while bracketing a root.
    NoRoot(&'static str),
    /// An iterative solve failed to converge.
    NoConvergence(&'static str),
    /// The converged state has the wrong number of nodes.
    WrongNodeCount { want: usize, got: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivergentRegime { k } => {
                write!(f, "divergent regime: sigma = +1 requires k < 1, got k = {k}")
            }
            Error::BlowUp { y, phi } => {
                write!(f, "solution blow-up at y = {y} (|phi| = {phi:e})")
            }
            Error::DomainError(msg) => write!(f, "domain error: {msg}"),
            Error::OutOfRange { value, min, max } => {
                write!(f, "value {value} outside stored range [{min}, {max}]")
            }
            Error::NoTurningPoint => write!(f, "no classical turning point"),
            Error::SignChange { x } => {
                write!(f, "q^2 changes sign inside the integration interval near x = {x}")
            }
            Error::ForbiddenWindow { mu, w } => {
                write!(f, "mu = {mu} lies in the forbidden window (-|w|, |w|) for w = {w}")
            }
            Error::DegeneratePhi => write!(f, "degenerate phi: least-squares weight vanishes"),
            Error::NoRoot(msg) => write!(f, "no root bracketed: {msg}"),
            Error::NoConvergence(msg) => write!(f, "no convergence: {msg}"),
            Error::WrongNodeCount { want, got } => {
                write!(f, "wrong node count: wanted {want}, got {got}")
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
