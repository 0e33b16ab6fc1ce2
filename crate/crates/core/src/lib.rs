//! Realizations of Schur-class functions on the symmetrized bidisc and the
//! tetrablock, and certificate-based interpolation into the tetrablock
//! (equivalently, μ-synthesis for the diagonal 2×2 structure).

pub mod domains;
pub mod error;
pub mod feasibility;
pub mod hardy;
pub mod io;
pub mod linalg;
pub mod realization;
pub mod saltire;
pub mod suites;
pub mod synthesis;
pub mod testgen;

pub type C64 = nalgebra::Complex<f64>;

pub use error::{Error, Result};
