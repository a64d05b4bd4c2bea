//! Numerical toolkit for the momentum-space partial-wave reduction of the
//! two-dimensional Brown-Ravenhall operator with Coulomb coupling.
//!
//! The crate evaluates the reduced radial channel kernels, discretizes the
//! channel quadratic forms on mapped half-line grids, computes their lowest
//! eigenvalues as a function of the coupling strength, and verifies the
//! algebraic certificates behind the positivity bound and the unboundedness
//! construction above the critical coupling.

pub mod certificate;
pub mod identities;
pub mod kernel;
pub mod quadrature;
pub mod specfun;
pub mod spectral;
pub mod unbounded;

mod eigen;

pub use certificate::{critical_coupling, CriticalCoupling};
pub use kernel::{Channel, Momentum, Momentum2D};
pub use quadrature::{MapKind, QuadratureResult, RadialGrid};
pub use spectral::{ChannelForm, SpectralReport};
pub use unbounded::{DivergenceRow, TrialWindow};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("eigensolver did not converge: {0}")]
    Eigen(String),
    #[error("channel kernel is singular on the diagonal p = p'")]
    DiagonalKernel,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
