//! Standard bases, generic standard bases and Gröbner fans for ideals of the
//! homogenized ring of differential operators `D̂_n⟨z⟩`, with coefficients
//! in `ℚ` or in fractions of a polynomial parameter ring `ℚ[y]`.

pub mod cli;
pub mod coeffs;
pub mod division;
pub mod error;
pub mod fan;
pub mod hdo;
pub mod parametric;
pub mod polyhedra;
pub mod sample;
pub mod standard;

pub use error::{Error, Result};
