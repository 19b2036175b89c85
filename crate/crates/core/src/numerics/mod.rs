//! Floating-point evaluation: classical and single-valued polylogarithms,
//! the realization of symbols as real numbers, and sampling-based checks.
//!
//! Numeric checks are evidence, never proof; reports say so.

pub mod check;
pub mod polylog;
pub mod realize;

use std::fmt;

use num_complex::Complex64;
use num_traits::ToPrimitive;

pub use check::{
    realize_check, wedge_numeric_check, Expectation, NumericOptions, NumericReport, NumericVerdict, Sampler,
};
pub use polylog::{bernoulli, bernoulli_poly, polylog, single_valued_l, zeta};
pub use realize::{realize, realize_symbol, realize_wedge, GUARD_EPS};

use crate::error::{Error, Result};
use crate::fields::FieldElem;
use crate::Q;

/// A complex number as a field element, so that symbolic rewriting and
/// rational-function evaluation run unchanged in floating point. Equality
/// is exact; closeness to special values is handled by guards.
#[derive(Clone, Copy, PartialEq)]
pub struct Cx(pub Complex64);

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.6}{:+.6}i)", self.0.re, self.0.im)
    }
}

impl fmt::Debug for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FieldElem for Cx {
    fn zero_like(&self) -> Self {
        Cx(Complex64::new(0.0, 0.0))
    }
    fn one_like(&self) -> Self {
        Cx(Complex64::new(1.0, 0.0))
    }
    fn add(&self, other: &Self) -> Self {
        Cx(self.0 + other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Cx(self.0 * other.0)
    }
    fn neg(&self) -> Self {
        Cx(-self.0)
    }
    fn inv(&self) -> Result<Self> {
        if self.0 == Complex64::new(0.0, 0.0) {
            return Err(Error::DivisionByZero);
        }
        Ok(Cx(1.0 / self.0))
    }
    fn is_zero(&self) -> bool {
        self.0 == Complex64::new(0.0, 0.0)
    }
    fn is_one(&self) -> bool {
        self.0 == Complex64::new(1.0, 0.0)
    }
    fn from_rational(&self, q: &Q) -> Result<Self> {
        let v = q
            .to_f64()
            .ok_or_else(|| Error::Domain(format!("{q} does not fit a double")))?;
        Ok(Cx(Complex64::new(v, 0.0)))
    }
}
