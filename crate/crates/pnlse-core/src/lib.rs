//! Stationary states of the one-dimensional Gross-Pitaevskii equation
//! computed two ways: a semiclassical route that maps the equation onto the
//! second Painleve transcendent and reduces quantization to an algebraic
//! condition, and a numerically exact shooting solver used as the reference.
//!
//! The internal convention throughout is the dimensionless form
//! `psi'' = -q^2(x) psi + 2 g psi^3` with `q^2(x) = 2 (mu - V(x))`.
//!
//! The crate is `no_std` (with `alloc`); all IO and the CLI live in the
//! companion `pnlse-cli` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod exact;
pub mod mapping;
pub mod ode;
pub mod painleve;
pub mod potentials;
pub mod quad;
pub mod quantize;
pub mod rootfind;
pub mod soliton;
pub mod specfun;

pub use error::{Error, Result};
pub use exact::ExactEigenstate;
pub use mapping::{EffectiveCoupling, MappingFunction};
pub use painleve::PainleveSolution;
pub use potentials::Potential;
pub use quantize::EigenstateResult;
pub use soliton::{LatticeSoliton, SolitonKind, SolitonParams};
pub use specfun::ConnectionConstants;
