//! Multivariate polynomials over `Q` with exact division and gcd.
//!
//! Monomials are exponent vectors compared lexicographically, variable 0
//! most significant. The gcd recurses on the smallest variable present,
//! splitting off contents and running a primitive pseudo-remainder
//! sequence in that variable.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::Q;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> MPoly {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> MPoly {
        MPoly::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> MPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::monomial(e, Q::one())
    }

    pub fn monomial(exps: Vec<u32>, c: Q) -> MPoly {
        let mut p = MPoly::zero(exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<Q> {
        self.is_constant()
            .then(|| self.terms.values().next().cloned().unwrap_or_else(Q::zero))
    }

    /// The lexicographically largest term.
    pub fn leading(&self) -> Option<(&Vec<u32>, &Q)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        self.scale(&-Q::one())
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> MPoly {
        (0..n).fold(MPoly::one(self.nvars), |acc, _| acc.mul(self))
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        let (de, dc) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        while let Some((re, rc)) = rem.leading() {
            if re.iter().zip(de).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(de).map(|(a, b)| a - b).collect();
            let t = MPoly::monomial(e, rc / dc);
            rem = rem.sub(&t.mul(divisor));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Coefficients in `var`: entry `k` multiplies `var^k` and is free of
    /// `var`.
    fn coefficients_in(&self, var: usize) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(self.nvars); self.degree_in(var) as usize + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[var] as usize;
            e2[var] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    fn shift_in(&self, var: usize, k: u32) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2[var] += k;
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    fn lowest_var(&self) -> Option<usize> {
        (0..self.nvars).find(|&v| self.degree_in(v) > 0)
    }

    fn content_in(&self, var: usize) -> MPoly {
        self.coefficients_in(var)
            .iter()
            .fold(MPoly::zero(self.nvars), |g, c| MPoly::gcd(&g, c))
    }

    /// Pseudo-remainder of `self` by `g` as polynomials in `var`.
    fn prem(&self, g: &MPoly, var: usize) -> MPoly {
        let dg = g.degree_in(var);
        let lg = g.coefficients_in(var).pop().unwrap();
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(var) >= dg {
            let dr = r.degree_in(var);
            let lr = r.coefficients_in(var).pop().unwrap();
            r = r.mul(&lg).sub(&lr.shift_in(var, dr - dg).mul(g));
        }
        r
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return MPoly::one(a.nvars);
        }
        let var = match (a.lowest_var(), b.lowest_var()) {
            (Some(x), Some(y)) => x.min(y),
            _ => return MPoly::one(a.nvars),
        };
        let (ca, cb) = (a.content_in(var), b.content_in(var));
        let content = MPoly::gcd(&ca, &cb);
        let mut f = a.div_exact(&ca).expect("content divides");
        let mut g = b.div_exact(&cb).expect("content divides");
        if f.degree_in(var) < g.degree_in(var) {
            std::mem::swap(&mut f, &mut g);
        }
        while !g.is_zero() {
            if g.degree_in(var) == 0 {
                f = MPoly::one(a.nvars);
                break;
            }
            let r = f.prem(&g, var);
            f = g;
            g = if r.is_zero() {
                r
            } else {
                r.div_exact(&r.content_in(var)).expect("content divides")
            };
        }
        let pp = if f.is_constant() {
            MPoly::one(a.nvars)
        } else {
            f.div_exact(&f.content_in(var)).expect("content divides")
        };
        content.mul(&pp).monic()
    }

    /// Evaluates with `eval_var(i)` for the variables and `embed` for the
    /// coefficients.
    pub fn eval<E, FV, FC>(&self, zero: E, mut eval_var: FV, mut embed: FC) -> crate::Result<E>
    where
        E: super::FieldElem,
        FV: FnMut(usize) -> E,
        FC: FnMut(&Q) -> crate::Result<E>,
    {
        let vals: Vec<E> = (0..self.nvars).map(&mut eval_var).collect();
        let mut acc = zero;
        for (e, c) in &self.terms {
            let mut t = embed(c)?;
            for (v, &k) in vals.iter().zip(e) {
                for _ in 0..k {
                    t = t.mul(v);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Writes the polynomial with the given variable names.
    pub fn show(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(k, _)| **k > 0)
                .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
                .collect();
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (mono.is_empty(), a.is_one()) {
                (true, _) => out.push_str(&a.to_string()),
                (false, true) => out.push_str(&mono.join("*")),
                (false, false) => out.push_str(&format!("{a}*{}", mono.join("*"))),
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        f.write_str(&self.show(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }

    fn c(n: usize, v: i64) -> MPoly {
        MPoly::constant(n, Q::from_integer(v.into()))
    }

    #[test]
    fn exact_division() {
        let (a, b) = (x(2, 0), x(2, 1));
        let p = c(2, 1).sub(&a.mul(&b));
        let q = a.add(&c(2, 3));
        assert_eq!(p.mul(&q).div_exact(&q), Some(p.clone()));
        assert_eq!(p.div_exact(&q), None);
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let (a, b, z) = (x(3, 0), x(3, 1), x(3, 2));
        let g = c(3, 1).sub(&a.mul(&b).mul(&z));
        let u = a.add(&b).pow(2);
        let v = c(3, 1).sub(&z).mul(&a);
        let got = MPoly::gcd(&g.mul(&u), &g.mul(&v));
        assert_eq!(got, g.monic());
    }

    #[test]
    fn coprime_gcd_is_one() {
        let (a, b) = (x(2, 0), x(2, 1));
        let p = c(2, 1).sub(&a);
        let q = c(2, 1).sub(&a.mul(&b));
        assert_eq!(MPoly::gcd(&p, &q), MPoly::one(2));
    }

    fn small_poly() -> impl Strategy<Value = MPoly> {
        proptest::collection::vec(((0u32..3, 0u32..3), -3i64..4), 1..4).prop_map(|ts| {
            ts.into_iter().fold(MPoly::zero(2), |acc, ((e0, e1), k)| {
                acc.add(&MPoly::monomial(vec![e0, e1], Q::from_integer(k.into())))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn gcd_divides_both(p in small_poly(), q in small_poly(), r in small_poly()) {
            prop_assume!(!r.is_zero() && !(p.is_zero() && q.is_zero()));
            let (a, b) = (p.mul(&r), q.mul(&r));
            let g = MPoly::gcd(&a, &b);
            prop_assert!(a.div_exact(&g).is_some());
            prop_assert!(b.div_exact(&g).is_some());
            // the common factor is recovered up to a unit
            prop_assert!(g.div_exact(&r.monic()).is_some());
        }
    }
}
