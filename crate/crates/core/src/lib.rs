//! Spectral verification laboratory for the Helmholtz resolvent problem
//! λ²u − Δu = f on two model geometries: the half-plane and the unit disk.
//!
//! The crate provides exact solution representations (Fourier multipliers on
//! the half-plane, modal Bessel expansions on the disk), every norm that
//! appears in the wavenumber-explicit resolvent estimates, residual checks for
//! the integral identities those estimates rest on, and a sweep engine that
//! measures estimate quotients and fitted |λ|-exponents against a frozen
//! golden baseline.

pub mod circle;
pub mod diskmodal;
pub mod error;
pub mod estimates;
pub mod frequency;
pub mod halfspace;
pub mod identities;
pub mod norms;
pub mod quadrature;
pub mod specfun;

pub use circle::CircleData;
pub use error::{CoreError, Result};
pub use frequency::Frequency;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
