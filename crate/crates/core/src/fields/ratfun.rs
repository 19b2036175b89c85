//! Rational functions over `Q` in named variables.
//!
//! Normal form: numerator and denominator coprime, denominator monic in
//! the lexicographic order. Equal functions are therefore structurally
//! equal.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::mpoly::MPoly;
use super::FieldElem;
use crate::error::{Error, Result};
use crate::Q;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatFun {
    vars: Arc<[String]>,
    num: MPoly,
    den: MPoly,
}

impl RatFun {
    pub fn new(vars: Arc<[String]>, num: MPoly, den: MPoly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            let n = vars.len();
            return Ok(RatFun {
                vars,
                num: MPoly::zero(n),
                den: MPoly::one(n),
            });
        }
        let g = MPoly::gcd(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let lead = den.leading().map(|(_, c)| c.recip()).unwrap();
        Ok(RatFun {
            vars,
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    pub fn constant(vars: Arc<[String]>, c: Q) -> RatFun {
        let n = vars.len();
        RatFun {
            vars,
            num: MPoly::constant(n, c),
            den: MPoly::one(n),
        }
    }

    pub fn one(vars: Arc<[String]>) -> RatFun {
        RatFun::constant(vars, Q::one())
    }

    pub fn var(vars: Arc<[String]>, name: &str) -> Result<RatFun> {
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::FieldSpec(format!("unknown variable {name}")))?;
        let n = vars.len();
        Ok(RatFun {
            vars,
            num: MPoly::var(n, i),
            den: MPoly::one(n),
        })
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    /// Evaluates at `point` (one value per variable) in any field.
    pub fn eval<E: FieldElem>(&self, point: &[E], like: &E) -> Result<E> {
        assert_eq!(point.len(), self.vars.len(), "one value per variable");
        let ev = |p: &MPoly| p.eval(like.zero_like(), |i| point[i].clone(), |c| like.from_rational(c));
        let den = ev(&self.den)?;
        if den.is_zero() {
            let at: Vec<String> = self.vars.iter().zip(point).map(|(v, x)| format!("{v}={x}")).collect();
            return Err(Error::Pole(format!("{self} at {}", at.join(", "))));
        }
        ev(&self.num)?.div(&den)
    }

    /// Specializes at a point given by name; every variable must be
    /// assigned.
    pub fn specialize<E: FieldElem>(&self, point: &std::collections::BTreeMap<String, E>) -> Result<E> {
        let vals: Vec<E> = self
            .vars
            .iter()
            .map(|v| {
                point
                    .get(v)
                    .cloned()
                    .ok_or_else(|| Error::Domain(format!("no value for variable {v}")))
            })
            .collect::<Result<_>>()?;
        let like = vals
            .first()
            .cloned()
            .ok_or_else(|| Error::Domain("specializing a function of no variables".into()))?;
        self.eval(&vals, &like)
    }

    /// Parses `+ - * / ^`, parentheses, integers and variable names.
    pub fn parse(vars: Arc<[String]>, text: &str) -> Result<RatFun> {
        let mut p = Parser {
            s: text.as_bytes(),
            pos: 0,
            vars,
        };
        let r = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.error("unexpected input"));
        }
        Ok(r)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: Arc<[String]>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFun> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.factor()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = if c == b'*' {
                acc.mul(&f)
            } else {
                acc.div(&f).map_err(|_| self.error("division by zero"))?
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFun> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.factor()?.neg());
        }
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = self.peek() == Some(b'-');
            if neg {
                self.pos += 1;
            }
            let e = self.integer()?;
            let e: i64 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return base
                .powi(if neg { -e } else { e })
                .map_err(|_| self.error("division by zero"));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap())
    }

    fn primary(&mut self) -> Result<RatFun> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected )"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFun::constant(self.vars.clone(), Q::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                RatFun::var(self.vars.clone(), name).map_err(|_| Error::Parse {
                    pos: start,
                    msg: format!("unknown variable {name}"),
                })
            }
            _ => Err(self.error("expected a number, variable or (")),
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.show(&self.vars);
        if self.den.is_constant() {
            return f.write_str(&num);
        }
        let wrap = |s: String, p: &MPoly| if p.terms().count() > 1 { format!("({s})") } else { s };
        write!(f, "{}/{}", wrap(num, &self.num), wrap(self.den.show(&self.vars), &self.den))
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FieldElem for RatFun {
    fn zero_like(&self) -> Self {
        RatFun::constant(self.vars.clone(), Q::zero())
    }
    fn one_like(&self) -> Self {
        RatFun::one(self.vars.clone())
    }
    fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RatFun::new(self.vars.clone(), num, self.den.mul(&other.den)).expect("nonzero denominators")
    }
    fn mul(&self, other: &Self) -> Self {
        RatFun::new(self.vars.clone(), self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominators")
    }
    fn neg(&self) -> Self {
        RatFun {
            vars: self.vars.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Result<Self> {
        RatFun::new(self.vars.clone(), self.den.clone(), self.num.clone())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num == self.den
    }
    fn from_rational(&self, q: &Q) -> Result<Self> {
        Ok(RatFun::constant(self.vars.clone(), q.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn xy() -> Arc<[String]> {
        vec!["x".to_string(), "y".to_string()].into()
    }

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn inverse_cancels() {
        let a = RatFun::parse(xy(), "1 - x*y").unwrap();
        let b = RatFun::parse(xy(), "1/(1-x*y)").unwrap();
        assert!(a.mul(&b).is_one());
    }

    #[test]
    fn normal_forms_are_structural() {
        let a = RatFun::parse(xy(), "(x^2 - y^2)/(x - y)").unwrap();
        let b = RatFun::parse(xy(), "y + x").unwrap();
        assert_eq!(a, b);
        let c = RatFun::parse(xy(), "(2*x)/(4*x*y)").unwrap();
        assert_eq!(c, RatFun::parse(xy(), "1/(2*y)").unwrap());
    }

    #[test]
    fn specialize_at_rational_point() {
        let f = RatFun::parse(xy(), "x*(1-y)/(1-x*y)").unwrap();
        let pt: BTreeMap<String, Q> = [("x".into(), q(2, 1)), ("y".into(), q(3, 1))].into();
        assert_eq!(f.specialize(&pt).unwrap(), q(4, 5));
    }

    #[test]
    fn pole_is_reported() {
        let f = RatFun::parse(xy(), "1/(1-x*y)").unwrap();
        let pt: BTreeMap<String, Q> = [("x".into(), q(1, 1)), ("y".into(), q(1, 1))].into();
        assert!(matches!(f.specialize(&pt), Err(Error::Pole(_))));
    }

    #[test]
    fn zero_specializes_to_zero() {
        let f = RatFun::parse(vec!["x".to_string()].into(), "x").unwrap();
        let pt: BTreeMap<String, Q> = [("x".into(), q(0, 1))].into();
        assert!(FieldElem::is_zero(&f.specialize(&pt).unwrap()));
    }

    #[test]
    fn display_round_trips() {
        for s in ["x*(1-y)/(1-x*y)", "-x*y/(1-x*y)", "(1-x)/(1-x*y*y)", "x^-2"] {
            let f = RatFun::parse(xy(), s).unwrap();
            assert_eq!(RatFun::parse(xy(), &f.to_string()).unwrap(), f, "{s} -> {f}");
        }
    }

    #[test]
    fn parse_errors() {
        assert!(RatFun::parse(xy(), "x +").is_err());
        assert!(RatFun::parse(xy(), "z").is_err());
        assert!(RatFun::parse(xy(), "1/(x-x)").is_err());
    }

    #[test]
    fn specialize_is_a_homomorphism_on_samples() {
        let f = RatFun::parse(xy(), "(1-y)/(1-x*y)").unwrap();
        let g = RatFun::parse(xy(), "x^2 - 3*y").unwrap();
        for (a, b) in [(2, 5), (-3, 7), (4, -1)] {
            let pt: BTreeMap<String, Q> = [("x".into(), q(a, 1)), ("y".into(), q(b, 3))].into();
            let (fv, gv) = (f.specialize(&pt).unwrap(), g.specialize(&pt).unwrap());
            assert_eq!(f.add(&g).specialize(&pt).unwrap(), fv.add(&gv));
            assert_eq!(f.mul(&g).specialize(&pt).unwrap(), fv.mul(&gv));
        }
    }
}
