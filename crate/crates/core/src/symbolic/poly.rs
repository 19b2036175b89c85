//! Polynomials in the formal `t` variables, with rational or vector
//! (linear-combination) coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::lincomb::LinComb;
use super::tform::{TForm, MAX_T};
use crate::Q;

/// Exponent vector of a `t`-monomial. Index 0 is the exponent of `t1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [u8; MAX_T]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_T]);

    /// `t1^e1 * t2^e2 * ...` from a slice of exponents.
    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_T);
        let mut m = [0u8; MAX_T];
        for (slot, &e) in m.iter_mut().zip(exps) {
            *slot = u8::try_from(e).expect("t-exponent overflow");
        }
        Monomial(m)
    }

    /// The monomial `t^(n-1)` tagging the coefficient `[..]_n` of a series.
    pub fn for_index(index: &[u32]) -> Self {
        let e: Vec<u32> = index.iter().map(|n| n - 1).collect();
        Monomial::from_exponents(&e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0) {
            *a = a.checked_add(b).expect("t-exponent overflow");
        }
        Monomial(m)
    }

    pub fn exponent(&self, var: usize) -> u8 {
        self.0[var]
    }

    fn with_exponent(&self, var: usize, e: u8) -> Monomial {
        let mut m = self.0;
        m[var] = e;
        Monomial(m)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "t{}", i + 1)?;
            } else {
                write!(f, "t{}^{e}", i + 1)?;
            }
            first = false;
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A polynomial in `t` with rational coefficients.
pub type SPoly = BTreeMap<Monomial, Q>;

/// The polynomial `1`.
pub fn spoly_one() -> SPoly {
    let mut p = SPoly::new();
    p.insert(Monomial::ONE, Q::one());
    p
}

/// A linear form as a polynomial.
pub fn spoly_from_form(form: &TForm) -> SPoly {
    let mut p = SPoly::new();
    for i in 0..MAX_T {
        let c = form.coeff(i);
        if c != 0 {
            let mut m = [0u8; MAX_T];
            m[i] = 1;
            p.insert(Monomial(m), Q::from_integer(c.into()));
        }
    }
    p
}

pub fn spoly_mul(a: &SPoly, b: &SPoly) -> SPoly {
    let mut out = SPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let e = out.entry(ma.mul(mb)).or_insert_with(Q::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `form^n`, expanded.
pub fn spoly_form_pow(form: &TForm, n: u32) -> SPoly {
    let base = spoly_from_form(form);
    let mut out = spoly_one();
    for _ in 0..n {
        out = spoly_mul(&out, &base);
    }
    out
}

/// Error raised when a division by a linear form leaves a remainder.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("polynomial is not divisible by {divisor}")]
pub struct NotDivisible {
    pub divisor: TForm,
}

/// A polynomial in `t` whose coefficients are linear combinations of keys.
#[derive(Clone, PartialEq, Eq)]
pub struct TPoly<K: Ord> {
    terms: BTreeMap<Monomial, LinComb<K>>,
}

impl<K: Ord> Default for TPoly<K> {
    fn default() -> Self {
        TPoly {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> TPoly<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial with value `c`.
    pub fn constant(c: LinComb<K>) -> Self {
        let mut out = Self::zero();
        out.add_at(Monomial::ONE, &c, &Q::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> LinComb<K> {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &LinComb<K>)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `scale * c * m`.
    pub fn add_at(&mut self, m: Monomial, c: &LinComb<K>, scale: &Q) {
        if c.is_zero() || scale.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        entry.add_scaled(c, scale);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &TPoly<K>, scale: &Q) {
        for (m, c) in &other.terms {
            self.add_at(*m, c, scale);
        }
    }

    pub fn add_assign(&mut self, other: &TPoly<K>) {
        self.add_scaled(other, &Q::one());
    }

    pub fn scaled(&self, scale: &Q) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, scale);
        out
    }

    /// Multiplies by a scalar polynomial.
    pub fn mul_spoly(&self, p: &SPoly) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (mp, cp) in p {
                out.add_at(m.mul(mp), c, cp);
            }
        }
        out
    }

    /// Exact division by a nonzero linear form.
    ///
    /// Uses the variable with the largest index in `form` as leading
    /// variable and eliminates leading terms until nothing is left.
    pub fn div_form(&self, form: &TForm) -> Result<Self, NotDivisible> {
        let lead = (0..MAX_T)
            .rev()
            .find(|&i| form.coeff(i) != 0)
            .expect("division by the zero form");
        let lead_coeff = Q::from_integer(form.coeff(lead).into());
        let form_poly = spoly_from_form(form);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        loop {
            // term with the largest exponent of the leading variable
            let Some((m, c)) = rem
                .terms
                .iter()
                .max_by_key(|(m, _)| (m.exponent(lead), **m))
                .map(|(m, c)| (*m, c.clone()))
            else {
                break;
            };
            let e = m.exponent(lead);
            if e == 0 {
                return Err(NotDivisible { divisor: *form });
            }
            let qm = m.with_exponent(lead, e - 1);
            let qc = c.scaled(&(Q::one() / &lead_coeff));
            let mut q_term = Self::zero();
            q_term.add_at(qm, &qc, &Q::one());
            rem.add_scaled(&q_term.mul_spoly(&form_poly), &-Q::one());
            quot.add_assign(&q_term);
        }
        Ok(quot)
    }

    /// Bilinear product using `combine` on keys; `combine` returns a sign
    /// and a key, or `None` for a vanishing product.
    pub fn product<K2, K3, F>(&self, other: &TPoly<K2>, mut combine: F) -> TPoly<K3>
    where
        K2: Ord + Clone,
        K3: Ord + Clone,
        F: FnMut(&K, &K2) -> Option<(i32, K3)>,
    {
        let mut out = TPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut acc = LinComb::zero();
                for (ka, qa) in ca {
                    for (kb, qb) in cb {
                        if let Some((sign, k)) = combine(ka, kb) {
                            acc.add_term(k, qa * qb * Q::from_integer(sign.into()));
                        }
                    }
                }
                out.add_at(ma.mul(mb), &acc, &Q::one());
            }
        }
        out
    }

    /// Applies a linear map to every coefficient.
    pub fn map_coeffs<K2, E, F>(&self, mut f: F) -> Result<TPoly<K2>, E>
    where
        K2: Ord + Clone,
        F: FnMut(&LinComb<K>) -> Result<LinComb<K2>, E>,
    {
        let mut out = TPoly::zero();
        for (m, c) in &self.terms {
            out.add_at(*m, &f(c)?, &Q::one());
        }
        Ok(out)
    }

    /// Keeps only the monomials of total degree `deg`.
    pub fn homogeneous_part(&self, deg: u32) -> Self {
        TPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == deg)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Keeps only monomials of total degree at most `deg`.
    pub fn truncated(&self, deg: u32) -> Self {
        TPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= deg)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }
}

impl<K: Ord + fmt::Display> fmt::Display for TPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*{m}")?;
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Display> fmt::Debug for TPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize) -> TForm {
        TForm::var(i)
    }

    #[test]
    fn binomial_expansion() {
        let p = spoly_form_pow(&(t(1) - t(0)), 3);
        // (t2 - t1)^3 = t2^3 - 3 t2^2 t1 + 3 t2 t1^2 - t1^3
        assert_eq!(p.len(), 4);
        assert_eq!(p[&Monomial::from_exponents(&[1, 2])], Q::from_integer((-3).into()));
        assert_eq!(p[&Monomial::from_exponents(&[3, 0])], Q::from_integer((-1).into()));
    }

    #[test]
    fn exact_division_round_trip() {
        let key = LinComb::single("k");
        let base = TPoly::constant(key).mul_spoly(&spoly_form_pow(&(t(0) + t(2)), 2));
        let prod = base.mul_spoly(&spoly_from_form(&(t(0) - t(1))));
        assert_eq!(prod.div_form(&(t(0) - t(1))).unwrap(), base);
        assert!(base.div_form(&t(1)).is_err());
    }
}
