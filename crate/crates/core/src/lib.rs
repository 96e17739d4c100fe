//! Darboux–Crum deformations of the reflectionless soliton potential
//! `U(x) = -h(h+1)/cosh²x`, their exact spectra and scattering amplitudes,
//! and the integer KdV multi-solitons obtained from the resulting
//! reflectionless scattering data.
//!
//! The crate is organized bottom-up:
//!
//! - [`specfun`]: Jacobi polynomials, complex log-Gamma, Gauss `₂F₁`.
//! - [`darboux`]: base potential, pseudo-virtual seeds, deformed potentials and
//!   their bound states with norming constants.
//! - [`scattering`]: closed-form transmission/reflection amplitudes and an
//!   ODE-integration oracle.
//! - [`spectral`]: finite-difference eigen-solver used as an independent oracle.
//! - [`kdv`]: GLM determinant fields, KdV residuals, asymptotics and
//!   conserved quantities.
//! - [`cli`] and [`verify`]: the command-line front end and the check suites it runs.
//!
//! Every runnable capability has a matching program under `examples/`.

// `!(a <= b)` guards reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod darboux;
mod error;
pub mod format;
pub mod kdv;
pub mod ode;
pub mod poly;
pub mod quad;
pub mod scattering;
pub mod specfun;
pub mod spectral;
pub mod verify;

mod banded;

pub use darboux::{BoundState, DeformedSystem, Potential, StateKind, SystemSpec};
pub use error::{Error, Result};
pub use kdv::{AsymptoticSoliton, SolitonData};
pub use scattering::ScatteringAmplitudes;
pub use specfun::ComplexValue;
pub use spectral::{Eigenpair, GridSpec, StencilOrder};
