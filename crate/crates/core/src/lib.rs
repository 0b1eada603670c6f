//! Thermal (Johnson-Nyquist) interaction between two coupled antennas, a
//! stochastic circuit oracle for it, and a Lifshitz calculator for the thermal
//! Casimir pressure between Drude and plasma plates.

pub mod circuit;
pub mod constants;
pub mod error;
pub mod geometry;
pub mod langevin;
pub mod lifshitz;
pub mod quadrature;

pub use error::{Error, Result};
