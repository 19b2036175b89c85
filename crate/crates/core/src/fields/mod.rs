//! Exact arithmetic in the concrete fields that symbols are specialized to:
//! `Q`, finite fields `F_q` and rational function fields `Q(x, y, ..)`.

pub mod factor;
pub mod finite;
pub mod mpoly;
pub mod ratfun;
pub mod wedge;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

pub use factor::{factor_rational, MultiplicativeFactorization};
pub use finite::{Gf, GfElem};
pub use mpoly::MPoly;
pub use ratfun::RatFun;
pub use wedge::wedge_exact_check;

use crate::error::{Error, Result};
use crate::Q;

/// Field operations shared by every concrete field. Elements carry enough
/// context (characteristic, variable names) to build constants of the same
/// field.
pub trait FieldElem: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    /// The image of a rational number in the field of `self`.
    fn from_rational(&self, q: &Q) -> Result<Self>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// `1 - self`.
    fn one_minus(&self) -> Self {
        self.one_like().sub(self)
    }

    fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.one_like();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

impl FieldElem for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn from_rational(&self, q: &Q) -> Result<Self> {
        Ok(q.clone())
    }
}

/// A field element of any supported kind.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldElement {
    Rational(Q),
    Finite(GfElem),
    Function(RatFun),
}

macro_rules! both {
    ($a:expr, $b:expr, $x:ident, $y:ident => $e:expr) => {
        match ($a, $b) {
            (FieldElement::Rational($x), FieldElement::Rational($y)) => FieldElement::Rational($e),
            (FieldElement::Finite($x), FieldElement::Finite($y)) => FieldElement::Finite($e),
            (FieldElement::Function($x), FieldElement::Function($y)) => FieldElement::Function($e),
            (a, b) => panic!("mixed fields: {a} and {b}"),
        }
    };
}

macro_rules! each {
    ($a:expr, $x:ident => $e:expr) => {
        match $a {
            FieldElement::Rational($x) => $e,
            FieldElement::Finite($x) => $e,
            FieldElement::Function($x) => $e,
        }
    };
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        each!(self, x => fmt::Display::fmt(x, f))
    }
}

impl FieldElem for FieldElement {
    fn zero_like(&self) -> Self {
        match self {
            FieldElement::Rational(x) => FieldElement::Rational(x.zero_like()),
            FieldElement::Finite(x) => FieldElement::Finite(x.zero_like()),
            FieldElement::Function(x) => FieldElement::Function(x.zero_like()),
        }
    }
    fn one_like(&self) -> Self {
        match self {
            FieldElement::Rational(x) => FieldElement::Rational(x.one_like()),
            FieldElement::Finite(x) => FieldElement::Finite(x.one_like()),
            FieldElement::Function(x) => FieldElement::Function(x.one_like()),
        }
    }
    fn add(&self, other: &Self) -> Self {
        both!(self, other, x, y => x.add(y))
    }
    fn mul(&self, other: &Self) -> Self {
        both!(self, other, x, y => x.mul(y))
    }
    fn neg(&self) -> Self {
        match self {
            FieldElement::Rational(x) => FieldElement::Rational(-x),
            FieldElement::Finite(x) => FieldElement::Finite(x.neg()),
            FieldElement::Function(x) => FieldElement::Function(x.neg()),
        }
    }
    fn inv(&self) -> Result<Self> {
        Ok(match self {
            FieldElement::Rational(x) => FieldElement::Rational(FieldElem::inv(x)?),
            FieldElement::Finite(x) => FieldElement::Finite(x.inv()?),
            FieldElement::Function(x) => FieldElement::Function(x.inv()?),
        })
    }
    fn is_zero(&self) -> bool {
        each!(self, x => FieldElem::is_zero(x))
    }
    fn is_one(&self) -> bool {
        each!(self, x => FieldElem::is_one(x))
    }
    fn from_rational(&self, q: &Q) -> Result<Self> {
        Ok(match self {
            FieldElement::Rational(_) => FieldElement::Rational(q.clone()),
            FieldElement::Finite(x) => FieldElement::Finite(x.from_rational(q)?),
            FieldElement::Function(x) => FieldElement::Function(x.from_rational(q)?),
        })
    }
}

/// A field named on the command line: `Q`, `Fq:7`, `Fq:9:poly=t^2+1` or
/// `Q(x,y)`.
#[derive(Clone, Debug)]
pub enum FieldSpec {
    Rationals,
    Finite(Arc<Gf>),
    Functions(Arc<[String]>),
}

impl FieldSpec {
    pub fn parse(text: &str) -> Result<FieldSpec> {
        let s = text.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(vars) = s.strip_prefix("Q(").and_then(|r| r.strip_suffix(')')) {
            let names: Vec<String> = vars.split(',').map(|v| v.trim().to_string()).collect();
            let valid = |v: &String| {
                v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                    && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            };
            if names.is_empty() || !names.iter().all(valid) {
                return Err(Error::FieldSpec(format!("bad variable list in {s}")));
            }
            let mut sorted = names.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != names.len() {
                return Err(Error::FieldSpec(format!("repeated variable in {s}")));
            }
            return Ok(FieldSpec::Functions(names.into()));
        }
        if let Some(rest) = s.strip_prefix("Fq:") {
            let (q, poly) = match rest.split_once(':') {
                Some((q, p)) => {
                    let p = p
                        .strip_prefix("poly=")
                        .ok_or_else(|| Error::FieldSpec(format!("expected poly=... in {s}")))?;
                    (q, Some(p))
                }
                None => (rest, None),
            };
            let q: u64 = q
                .trim()
                .parse()
                .map_err(|_| Error::FieldSpec(format!("bad field size in {s}")))?;
            let gf = match poly {
                Some(p) => Gf::with_polynomial(q, p)?,
                None => Gf::new(q)?,
            };
            return Ok(FieldSpec::Finite(Arc::new(gf)));
        }
        Err(Error::FieldSpec(format!("unknown field {s}")))
    }

    /// Parses an element: a rational `a/b`, an integer (or `t`-polynomial)
    /// in a finite field, or a rational function.
    pub fn element(&self, text: &str) -> Result<FieldElement> {
        match self {
            FieldSpec::Rationals => parse_rational(text).map(FieldElement::Rational),
            FieldSpec::Finite(gf) => gf.parse_element(text).map(FieldElement::Finite),
            FieldSpec::Functions(vars) => RatFun::parse(vars.clone(), text).map(FieldElement::Function),
        }
    }

    pub fn one(&self) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rational(Q::one()),
            FieldSpec::Finite(gf) => FieldElement::Finite(GfElem::one(gf.clone())),
            FieldSpec::Functions(vars) => FieldElement::Function(RatFun::one(vars.clone())),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::Finite(gf) => write!(f, "{gf}"),
            FieldSpec::Functions(v) => write!(f, "Q({})", v.join(",")),
        }
    }
}

pub fn parse_rational(text: &str) -> Result<Q> {
    let t = text.trim();
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("not a rational number: {t}"),
    };
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: num_bigint::BigInt = n.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Q::new(n, d))
}

/// Whether a rational is a unit up to sign, i.e. `+-1`.
pub fn is_torsion(q: &Q) -> bool {
    One::is_one(&q.abs())
}
