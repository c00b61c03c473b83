//! Bound states, scattering observables, and renormalization-group flow of a
//! one-dimensional semirelativistic particle interacting with N renormalized
//! Dirac-delta potentials.
//!
//! The kinetic operator is the Salpeter Hamiltonian sqrt(P^2 + m^2). Each delta
//! coupling is renormalized against a prescribed single-center binding energy
//! E_B^i, after which every observable is assembled from an N x N principal
//! matrix Phi(E):
//!
//! - [`principal`] builds Phi in the massive bound, massive scattering,
//!   massless, and nonrelativistic regimes, plus its energy derivative.
//! - [`spectrum`] locates bound states as zeros of the eigenvalue flows of
//!   Phi, classifies them, bounds the ground state from below, and evaluates
//!   normalized bound-state wave functions.
//! - [`scatter`] computes reflection/transmission amplitudes, phase shifts,
//!   threshold-anomaly scans, and Kronig-Penney transmission tables.
//! - [`rgflow`] evaluates the renormalized running coupling by quadrature and
//!   the closed-form flow of the beta function.
//! - [`kernels`] and [`specfun`] provide the heat kernel, free resolvent, and
//!   the self-contained special functions everything else is built from.
//!
//! Internally all formulas are evaluated in the units of the input data; the
//! natural dimensionless combinations are E/m, k/m, 2ma and (massless) aE.

pub mod error;
pub mod kernels;
pub mod principal;
pub mod quad;
pub mod rgflow;
pub mod roots;
pub mod scatter;
pub mod specfun;
pub mod spectrum;

pub use error::SalpeterError;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, SalpeterError>;
