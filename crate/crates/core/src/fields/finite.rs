//! Finite fields `F_{p^k}` as `F_p[t] / (f)` for a monic irreducible `f`.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::FieldElem;
use crate::error::{Error, Result};
use crate::Q;

/// The field `F_p[t] / (modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf {
    pub p: u64,
    pub k: usize,
    /// Monic, coefficients from the constant term up; length `k + 1`.
    pub modulus: Vec<u64>,
}

fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, a nonzero
    let mut r = 1u64;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Remainder of `a` modulo the nonzero polynomial `m` over `F_p`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut m = m.to_vec();
    trim(&mut m);
    let lead_inv = inv_mod(*m.last().unwrap(), p);
    while r.len() >= m.len() {
        let c = r.last().unwrap() * lead_inv % p;
        let shift = r.len() - m.len();
        for (i, mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    // trial division by monic polynomials of degree 1..=k/2
    for deg in 1..=k / 2 {
        let count = p.pow(deg as u32);
        for idx in 0..count {
            let mut g = digits(idx, p, deg);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut idx: u64, p: u64, len: usize) -> Vec<u64> {
    let mut v = Vec::with_capacity(len);
    for _ in 0..len {
        v.push(idx % p);
        idx /= p;
    }
    v
}

impl Gf {
    /// `F_q` with the first monic irreducible polynomial in the enumeration
    /// order of [`Gf::elements`] applied to the lower coefficients.
    pub fn new(q: u64) -> Result<Gf> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::FieldSpec(format!("{q} is not a prime power")))?;
        if k == 1 {
            return Ok(Gf {
                p,
                k,
                modulus: vec![0, 1],
            });
        }
        for idx in 0..p.pow(k as u32) {
            let mut f = digits(idx, p, k);
            f.push(1);
            if is_irreducible(&f, p) {
                return Ok(Gf { p, k, modulus: f });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// `F_q` defined by a user polynomial in `t`, e.g. `t^2+1`.
    pub fn with_polynomial(q: u64, poly: &str) -> Result<Gf> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::FieldSpec(format!("{q} is not a prime power")))?;
        let mut f = parse_t_poly(poly, p)?;
        trim(&mut f);
        if f.len() != k + 1 || f[k] != 1 {
            return Err(Error::FieldSpec(format!("{poly} is not monic of degree {k}")));
        }
        if !is_irreducible(&f, p) {
            return Err(Error::FieldSpec(format!("{poly} is reducible over F_{p}")));
        }
        Ok(Gf { p, k, modulus: f })
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    /// All elements; element `i` has base-`p` digits of `i` as coefficients.
    pub fn elements(self: &Arc<Self>) -> Vec<GfElem> {
        (0..self.order())
            .map(|i| GfElem {
                field: self.clone(),
                c: digits(i, self.p, self.k),
            })
            .collect()
    }

    /// Parses an integer or a polynomial in `t`.
    pub fn parse_element(self: &Arc<Self>, text: &str) -> Result<GfElem> {
        let c = parse_t_poly(text, self.p)?;
        Ok(GfElem::reduce(self.clone(), c))
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "Fq:{}", self.p)
        } else {
            write!(f, "Fq:{}:poly={}", self.order(), show_poly(&self.modulus))
        }
    }
}

fn show_poly(c: &[u64]) -> String {
    let mut parts = Vec::new();
    for (e, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let mono = match e {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{e}"),
        };
        parts.push(match (a, mono.is_empty()) {
            (_, true) => a.to_string(),
            (1, false) => mono,
            (_, false) => format!("{a}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// Parses `c0 + c1*t + t^2 - 3` style input, coefficients reduced mod `p`.
fn parse_t_poly(text: &str, p: u64) -> Result<Vec<u64>> {
    let bad = |m: &str| Error::FieldSpec(format!("{m} in polynomial {text}"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad("empty input"));
    }
    let mut out: Vec<u64> = Vec::new();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let (neg, body) = match rest.as_bytes()[0] {
            b'-' => (true, &rest[1..]),
            b'+' => (false, &rest[1..]),
            _ => (false, rest),
        };
        let end = body[1.min(body.len())..]
            .find(['+', '-'])
            .map(|i| i + 1)
            .unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let (coef, exp) = match term.find('t') {
            None => (term, 0usize),
            Some(i) => {
                let c = term[..i].trim_end_matches('*');
                let e = match &term[i + 1..] {
                    "" => 1,
                    pow => pow
                        .strip_prefix('^')
                        .and_then(|e| e.parse().ok())
                        .ok_or_else(|| bad("bad exponent"))?,
                };
                (if c.is_empty() { "1" } else { c }, e)
            }
        };
        let c: num_bigint::BigInt = coef.parse().map_err(|_| bad("bad coefficient"))?;
        let c = c.mod_floor(&num_bigint::BigInt::from(p)).to_u64().unwrap();
        let c = if neg { (p - c) % p } else { c };
        if out.len() <= exp {
            out.resize(exp + 1, 0);
        }
        out[exp] = (out[exp] + c) % p;
    }
    Ok(out)
}

/// An element of a finite field.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfElem {
    pub field: Arc<Gf>,
    /// Coefficients of `1, t, .., t^(k-1)`.
    pub c: Vec<u64>,
}

impl GfElem {
    fn reduce(field: Arc<Gf>, c: Vec<u64>) -> GfElem {
        let mut r = poly_rem(&c, &field.modulus, field.p);
        r.resize(field.k, 0);
        GfElem { field, c: r }
    }

    pub fn zero(field: Arc<Gf>) -> GfElem {
        let k = field.k;
        GfElem { field, c: vec![0; k] }
    }

    pub fn one(field: Arc<Gf>) -> GfElem {
        let mut e = GfElem::zero(field);
        e.c[0] = 1;
        e
    }

    /// Position in [`Gf::elements`].
    pub fn index(&self) -> u64 {
        self.c.iter().rev().fold(0, |acc, &d| acc * self.field.p + d)
    }

    fn pow(&self, mut e: u64) -> GfElem {
        let mut base = self.clone();
        let mut acc = GfElem::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&show_poly(&self.c))
    }
}

impl fmt::Debug for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.field)
    }
}

impl FieldElem for GfElem {
    fn zero_like(&self) -> Self {
        GfElem::zero(self.field.clone())
    }
    fn one_like(&self) -> Self {
        GfElem::one(self.field.clone())
    }
    fn add(&self, other: &Self) -> Self {
        let p = self.field.p;
        GfElem {
            field: self.field.clone(),
            c: self.c.iter().zip(&other.c).map(|(a, b)| (a + b) % p).collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let p = self.field.p;
        let mut prod = vec![0u64; self.c.len() + other.c.len()];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in other.c.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        GfElem::reduce(self.field.clone(), prod)
    }
    fn neg(&self) -> Self {
        let p = self.field.p;
        GfElem {
            field: self.field.clone(),
            c: self.c.iter().map(|a| (p - a) % p).collect(),
        }
    }
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.field.order() - 2))
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&a| a == 0)
    }
    fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&a| a == 0)
    }
    fn from_rational(&self, q: &Q) -> Result<Self> {
        let p = num_bigint::BigInt::from(self.field.p);
        let n = q.numer().mod_floor(&p).to_u64().unwrap();
        let d = q.denom().abs().mod_floor(&p).to_u64().unwrap();
        if d == 0 {
            return Err(Error::Pole(format!("{q} has a denominator divisible by {}", self.field.p)));
        }
        let mut e = GfElem::zero(self.field.clone());
        e.c[0] = n * inv_mod(d, self.field.p) % self.field.p;
        Ok(e)
    }
}
