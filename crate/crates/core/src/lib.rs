//! Exact computations with extensions of projectively normal varieties.
//!
//! Bottom-up: [`algebra`] has exact polynomials and [`groebner`] the ideal
//! engine. [`normal`] and [`extension`] build on them; [`gaussian`],
//! [`duval`] and [`classify`] are the applications. [`cli`] wraps it all.

pub mod algebra;
pub mod classify;
pub mod cli;
pub mod duval;
pub mod error;
pub mod extension;
pub mod gaussian;
pub mod groebner;
pub mod linalg;
pub mod models;
pub mod normal;

pub use error::{Error, Result};
