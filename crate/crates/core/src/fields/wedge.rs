//! Exact vanishing tests in the exterior square of a multiplicative group,
//! modulo torsion.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{factor_rational, FieldElem, FieldElement, MPoly, RatFun};
use crate::error::{Error, Result};
use crate::Q;

/// A free generator of `F^*` modulo torsion: a rational prime, or a member
/// of a coprime basis of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Gen {
    Prime(BigInt),
    Poly(usize),
}

type Exponents = Vec<(Gen, i64)>;

fn rational_exponents(q: &Q) -> Result<Exponents> {
    Ok(factor_rational(q)?
        .factors
        .into_iter()
        .map(|(p, e)| (Gen::Prime(p), i64::from(e)))
        .collect())
}

/// Pairwise coprime monic polynomials such that every inserted polynomial
/// is a constant times a product of their powers. Distinct members are
/// multiplicatively independent, which makes them a basis of the part of
/// `Q(x..)^*` they generate.
#[derive(Default)]
struct CoprimeBasis {
    members: Vec<MPoly>,
}

impl CoprimeBasis {
    fn insert(&mut self, p: &MPoly) {
        let mut work = vec![p.monic()];
        'next: while let Some(p) = work.pop() {
            if p.is_constant() {
                continue;
            }
            for i in 0..self.members.len() {
                let g = MPoly::gcd(&p, &self.members[i]);
                if g.is_constant() {
                    continue;
                }
                let b = self.members.swap_remove(i);
                work.push(b.div_exact(&g).expect("gcd divides").monic());
                work.push(p.div_exact(&g).expect("gcd divides").monic());
                work.push(g);
                continue 'next;
            }
            if !self.members.contains(&p) {
                self.members.push(p);
            }
        }
    }

    /// Writes `p = c * prod members^e`.
    fn decompose(&self, p: &MPoly) -> (Q, Vec<(usize, i64)>) {
        let mut rest = p.clone();
        let mut exps = Vec::new();
        for (i, b) in self.members.iter().enumerate() {
            let mut e = 0;
            while let Some(q) = rest.div_exact(b) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                exps.push((i, e));
            }
        }
        let c = rest
            .constant_value()
            .expect("coprime basis covers every inserted polynomial");
        (c, exps)
    }

    fn exponents(&self, f: &RatFun) -> Result<Exponents> {
        let (cn, en) = self.decompose(f.numerator());
        let (cd, ed) = self.decompose(f.denominator());
        let mut out = rational_exponents(&(cn / cd))?;
        let mut polys: BTreeMap<usize, i64> = BTreeMap::new();
        for (i, e) in en {
            *polys.entry(i).or_default() += e;
        }
        for (i, e) in ed {
            *polys.entry(i).or_default() -= e;
        }
        out.extend(polys.into_iter().filter(|(_, e)| *e != 0).map(|(i, e)| (Gen::Poly(i), e)));
        Ok(out)
    }
}

fn accumulate(form: &mut BTreeMap<(Gen, Gen), i64>, a: &Exponents, b: &Exponents, c: i64) {
    for (g, eg) in a {
        for (h, eh) in b {
            if g == h {
                continue;
            }
            let v = c * eg * eh;
            if g < h {
                *form.entry((g.clone(), h.clone())).or_default() += v;
            } else {
                *form.entry((h.clone(), g.clone())).or_default() -= v;
            }
        }
    }
}

/// Decides whether `sum coeff * (a ^ b)` vanishes in the exterior square of
/// the multiplicative group, modulo torsion.
///
/// Over `Q` both sides are factored into primes and the alternating form on
/// the free abelian group of primes is compared with zero; signs are
/// torsion and ignored. Over `F_q` the multiplicative group is cyclic, so
/// its exterior square vanishes and the answer is always `true`. Over
/// `Q(x, ..)` numerators and denominators are refined into a coprime basis
/// of polynomials; constants are factored as over `Q`.
pub fn wedge_exact_check(terms: &[(FieldElement, FieldElement, i64)]) -> Result<bool> {
    let mut form: BTreeMap<(Gen, Gen), i64> = BTreeMap::new();
    let mut basis = CoprimeBasis::default();
    for (a, b, _) in terms {
        if let (FieldElement::Function(a), FieldElement::Function(b)) = (a, b) {
            for f in [a, b] {
                basis.insert(f.numerator());
                basis.insert(f.denominator());
            }
        }
    }
    for (a, b, c) in terms {
        if a.is_zero() || b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (a, b) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                accumulate(&mut form, &rational_exponents(a)?, &rational_exponents(b)?, *c);
            }
            (FieldElement::Finite(_), FieldElement::Finite(_)) => {}
            (FieldElement::Function(a), FieldElement::Function(b)) => {
                accumulate(&mut form, &basis.exponents(a)?, &basis.exponents(b)?, *c);
            }
            _ => return Err(Error::Domain("mixed fields in a wedge".into())),
        }
    }
    Ok(form.values().all(|v| *v == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldSpec;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn wedge_of_four_and_minus_three_is_nonzero() {
        // x ^ (1-x) at x = 4
        let t = [(FieldElement::Rational(q(4, 1)), FieldElement::Rational(q(-3, 1)), 1)];
        assert!(!wedge_exact_check(&t).unwrap());
    }

    #[test]
    fn antisymmetric_pair_cancels() {
        let a = FieldElement::Rational(q(6, 5));
        let b = FieldElement::Rational(q(-7, 2));
        assert!(wedge_exact_check(&[(a.clone(), b.clone(), 1), (b, a, 1)]).unwrap());
    }

    #[test]
    fn torsion_is_invisible() {
        let a = FieldElement::Rational(q(-1, 1));
        let b = FieldElement::Rational(q(3, 1));
        assert!(wedge_exact_check(&[(a, b, 1)]).unwrap());
    }

    #[test]
    fn finite_field_wedges_vanish() {
        let f = FieldSpec::parse("Fq:7").unwrap();
        let t = [(f.element("3").unwrap(), f.element("5").unwrap(), 1)];
        assert!(wedge_exact_check(&t).unwrap());
    }

    #[test]
    fn function_field_self_wedge_vanishes() {
        let f = FieldSpec::parse("Q(x)").unwrap();
        let x = f.element("x").unwrap();
        assert!(wedge_exact_check(&[(x.clone(), x, 1)]).unwrap());
    }

    #[test]
    fn function_field_generic_wedge_is_nonzero() {
        let f = FieldSpec::parse("Q(x)").unwrap();
        let t = [(f.element("x").unwrap(), f.element("1-x").unwrap(), 1)];
        assert!(!wedge_exact_check(&t).unwrap());
    }

    #[test]
    fn function_field_bilinearity() {
        // (x^2 - 1) ^ x = (x-1) ^ x + (x+1) ^ x
        let f = FieldSpec::parse("Q(x)").unwrap();
        let e = |s: &str| f.element(s).unwrap();
        let t = [
            (e("x^2-1"), e("x"), 1),
            (e("x-1"), e("x"), -1),
            (e("x+1"), e("x"), -1),
        ];
        assert!(wedge_exact_check(&t).unwrap());
    }

    #[test]
    fn constants_inside_function_fields() {
        // (6x) ^ x = 2 ^ x + 3 ^ x
        let f = FieldSpec::parse("Q(x,y)").unwrap();
        let e = |s: &str| f.element(s).unwrap();
        let t = [(e("6*x"), e("x"), 1), (e("2"), e("x"), -1), (e("3"), e("x"), -1)];
        assert!(wedge_exact_check(&t).unwrap());
        let bad = [(e("6*x"), e("y"), 1), (e("2"), e("y"), -1)];
        assert!(!wedge_exact_check(&bad).unwrap());
    }

    #[test]
    fn shared_factors_are_refined() {
        // (x(1-x)) ^ ((1-x)y) against its expansion
        let f = FieldSpec::parse("Q(x,y)").unwrap();
        let e = |s: &str| f.element(s).unwrap();
        let t = [
            (e("x*(1-x)"), e("(1-x)*y"), 1),
            (e("x"), e("1-x"), -1),
            (e("x"), e("y"), -1),
            (e("1-x"), e("y"), -1),
        ];
        assert!(wedge_exact_check(&t).unwrap());
    }
}
