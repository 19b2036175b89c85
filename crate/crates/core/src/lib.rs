//! Symbolic and numeric engine for a Lie coalgebra of multiple
//! polylogarithms.
//!
//! Symbols `[x1,...,xd]_{n1,...,nd}` over formal atoms are manipulated
//! through their generating series; the cobrackets, the coproduct, the
//! inversion map and the low-depth shuffle products are all evaluated by
//! exact coefficient extraction. Concrete instances of relations are checked
//! over `Q`, finite fields and rational function fields, and numerically
//! through single-valued polylogarithms.

pub mod cli;
pub mod coalgebra;
pub mod error;
pub mod fields;
pub mod homology;
pub mod inversion;
pub mod numerics;
pub mod relations;
pub mod report;
pub mod shuffle;
pub mod symbolic;

pub use error::{Error, Result};

/// Exact rational coefficients.
pub type Q = num_rational::BigRational;
