//! Combinations of symbols with arguments in a concrete field, and their
//! cobracket obtained by substituting into the formal one.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::coalgebra::{delta_symbol, standard_atoms, Cobracket};
use crate::error::{Error, Result};
use crate::fields::{FieldElem, RatFun};
use crate::symbolic::{Arg, Symbol, SymbolComb, Violation, ViolationKind, WordComb};
use crate::Q;

/// A linear combination of concrete symbols, without repeated symbols or
/// zero coefficients once normalized.
pub type ConcreteTerms<E> = Vec<(Symbol<E>, Q)>;

/// `sum c * (a ^ b)`; normalized lists hold no pair twice in either order.
pub type WedgeTerms<E> = Vec<(Symbol<E>, Symbol<E>, Q)>;

/// Merges equal symbols and drops zero coefficients, keeping first-seen
/// order.
pub fn normalize<E: PartialEq + Clone>(terms: ConcreteTerms<E>) -> ConcreteTerms<E> {
    let mut out: ConcreteTerms<E> = Vec::with_capacity(terms.len());
    for (s, c) in terms {
        match out.iter_mut().find(|(t, _)| *t == s) {
            Some((_, d)) => *d += c,
            None => out.push((s, c)),
        }
    }
    out.retain(|(_, c)| !Zero::is_zero(c));
    out
}

/// Merges `a ^ b` with `b ^ a` and drops `a ^ a`.
pub fn normalize_wedges<E: PartialEq + Clone>(terms: WedgeTerms<E>) -> WedgeTerms<E> {
    let mut out: WedgeTerms<E> = Vec::with_capacity(terms.len());
    for (a, b, c) in terms {
        if a == b {
            continue;
        }
        if let Some(t) = out.iter_mut().find(|t| t.0 == a && t.1 == b) {
            t.2 += c;
        } else if let Some(t) = out.iter_mut().find(|t| t.0 == b && t.1 == a) {
            t.2 -= c;
        } else {
            out.push((a, b, c));
        }
    }
    out.retain(|t| !Zero::is_zero(&t.2));
    out
}

/// The admissibility condition for concrete arguments: every consecutive
/// product differs from `1`.
pub fn check_concrete<E: FieldElem>(args: &[E]) -> Result<(), Violation> {
    for i in 0..args.len() {
        let mut acc = args[i].one_like();
        for (j, a) in args.iter().enumerate().skip(i) {
            acc = acc.mul(a);
            if acc.is_one() {
                return Err(Violation {
                    start: i,
                    end: j,
                    kind: ViolationKind::ProductIsOne,
                });
            }
        }
    }
    Ok(())
}

pub fn show_terms<E: std::fmt::Display>(terms: &[(Symbol<E>, Q)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (s, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        match (i, c.is_negative()) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        if mag != Q::from_integer(1.into()) {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&s.to_string());
    }
    out
}

/// Value of a formal argument over the atoms `x1, .., xd` at `values`.
fn substitute<E: FieldElem>(arg: &Arg, values: &[E]) -> Result<E> {
    match arg {
        Arg::Zero => Ok(values[0].zero_like()),
        Arg::Infinity => Err(Error::UndefinedInfinity(arg.to_string())),
        Arg::Group(exps) => {
            let mut acc = values[0].one_like();
            for (atom, e) in exps {
                let i: usize = atom
                    .name()
                    .strip_prefix('x')
                    .and_then(|k| k.parse().ok())
                    .filter(|&k| k >= 1 && k <= values.len())
                    .ok_or_else(|| Error::Domain(format!("unexpected atom {atom}")))?;
                acc = acc.mul(&values[i - 1].powi(i64::from(*e))?);
            }
            Ok(acc)
        }
    }
}

/// Formal cobracket of the standard symbol with a given index, cached.
#[derive(Default)]
pub struct FormalDeltas {
    cache: HashMap<Vec<u32>, WordComb>,
}

impl FormalDeltas {
    pub fn get(&mut self, index: &[u32]) -> Result<&WordComb> {
        if !self.cache.contains_key(index) {
            let sym = Symbol::new(standard_atoms(index.len()), index.to_vec());
            let d = delta_symbol(&sym, Cobracket::Delta)?;
            self.cache.insert(index.to_vec(), d);
        }
        Ok(&self.cache[index])
    }
}

/// Cobracket of a concrete combination: the formal cobracket of each
/// symbol with its arguments substituted. Components with a zero argument
/// vanish.
pub fn delta_terms<E: FieldElem>(terms: &[(Symbol<E>, Q)]) -> Result<WedgeTerms<E>> {
    delta_terms_with(terms, &mut FormalDeltas::default())
}

pub fn delta_terms_with<E: FieldElem>(terms: &[(Symbol<E>, Q)], cache: &mut FormalDeltas) -> Result<WedgeTerms<E>> {
    let mut out = Vec::new();
    for (s, c) in terms {
        if s.weight() <= 1 {
            continue;
        }
        for (w, k) in cache.get(&s.index)? {
            let comps = w
                .wedge_components()
                .filter(|v| v.len() == 2)
                .ok_or_else(|| Error::Domain(format!("cobracket word {w} is not a wedge of two symbols")))?;
            let mut conc = Vec::with_capacity(2);
            for comp in comps {
                let args = comp
                    .args
                    .iter()
                    .map(|a| substitute(a, &s.args))
                    .collect::<Result<Vec<E>>>()?;
                conc.push(Symbol {
                    args,
                    index: comp.index.clone(),
                });
            }
            if conc.iter().any(|s| s.args.iter().any(FieldElem::is_zero)) {
                continue;
            }
            let b = conc.pop().expect("two components");
            let a = conc.pop().expect("two components");
            out.push((a, b, c * k));
        }
    }
    Ok(normalize_wedges(out))
}

/// Reads a formal combination as one over `Q(atoms)`, with the atoms as
/// variables in sorted order.
pub fn formal_to_functions(comb: &SymbolComb) -> Result<ConcreteTerms<RatFun>> {
    let mut names = BTreeSet::new();
    for (s, _) in comb.iter() {
        for a in &s.args {
            if let Arg::Group(v) = a {
                names.extend(v.iter().map(|(atom, _)| atom.name().to_string()));
            }
        }
    }
    let vars: Arc<[String]> = names.into_iter().collect::<Vec<_>>().into();
    let value = |a: &Arg| -> Result<RatFun> {
        match a {
            Arg::Zero => Ok(RatFun::constant(vars.clone(), Q::zero())),
            Arg::Infinity => Err(Error::UndefinedInfinity(format!("{a} has no value in a function field"))),
            Arg::Group(v) => {
                let mut acc = RatFun::one(vars.clone());
                for (atom, e) in v {
                    acc = acc.mul(&RatFun::var(vars.clone(), atom.name())?.powi(i64::from(*e))?);
                }
                Ok(acc)
            }
        }
    };
    let mut out = Vec::with_capacity(comb.len());
    for (s, c) in comb.iter() {
        let args = s.args.iter().map(value).collect::<Result<Vec<_>>>()?;
        out.push((Symbol::new(args, s.index.clone()), c.clone()));
    }
    Ok(out)
}

/// A weight-1 symbol as `(g, e)` meaning `e * log g`: `[g]_0 -> (g, 1)` and
/// `[g]_1 -> (1 - g, -1)`.
pub fn weight_one_as_unit<E: FieldElem>(s: &Symbol<E>) -> Result<(E, i64)> {
    match (s.args.as_slice(), s.index.as_slice()) {
        ([g], [0]) => Ok((g.clone(), 1)),
        ([g], [1]) => Ok((g.one_minus(), -1)),
        _ => Err(Error::Domain(format!("{s} is not of weight 1"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn normalize_merges_and_drops() {
        let a = Symbol::new(vec![q(2, 1)], vec![2]);
        let b = Symbol::new(vec![q(3, 1)], vec![2]);
        let t = normalize(vec![(a.clone(), q(1, 1)), (b.clone(), q(2, 1)), (a, q(-1, 1))]);
        assert_eq!(t, vec![(b, q(2, 1))]);
    }

    #[test]
    fn wedges_are_antisymmetric() {
        let a = Symbol::log(q(2, 1));
        let b = Symbol::log(q(3, 1));
        let t = normalize_wedges(vec![
            (a.clone(), b.clone(), q(1, 1)),
            (b.clone(), a.clone(), q(1, 1)),
            (a.clone(), a, q(5, 1)),
        ]);
        assert!(t.is_empty());
    }

    #[test]
    fn delta_of_depth_one_weight_two() {
        // [x]_2 -> [x]_1 ^ [x]_0
        let t = delta_terms(&[(Symbol::depth1(q(4, 1), 2), q(1, 1))]).unwrap();
        assert_eq!(t.len(), 1);
        let (a, b, c) = &t[0];
        let (a, b, c) = if a.index == [1] { (a, b, c.clone()) } else { (b, a, -c.clone()) };
        assert_eq!((a.index.as_slice(), b.index.as_slice()), (&[1u32][..], &[0u32][..]));
        assert_eq!((&a.args[0], &b.args[0], c), (&q(4, 1), &q(4, 1), q(1, 1)));
    }

    #[test]
    fn concrete_admissibility() {
        assert!(check_concrete(&[q(2, 1), q(1, 2)]).is_err());
        assert!(check_concrete(&[q(2, 1), q(3, 1)]).is_ok());
        assert!(check_concrete(&[q(1, 1)]).is_err());
    }

    #[test]
    fn formal_combination_over_functions() {
        let c = crate::symbolic::parse::parse_expression("[x*y^-1;2] - 2*[y;3]").unwrap();
        let t = formal_to_functions(&c).unwrap();
        assert_eq!(t.len(), 2);
        let vars = t[0].0.args[0].vars().clone();
        assert_eq!(&vars[..], &["x".to_string(), "y".to_string()]);
        let want = RatFun::parse(vars, "x/y").unwrap();
        assert!(t.iter().any(|(s, c)| s.args[0] == want && *c == q(1, 1)));
        let inf = crate::symbolic::parse::parse_expression("[x,inf;1,1]").unwrap();
        assert!(formal_to_functions(&inf).is_err());
    }

    #[test]
    fn substitution_of_monomials() {
        let vals = [q(2, 1), q(3, 1)];
        let a = Arg::from_exponents([(crate::symbolic::Atom::new("x1"), 2), (crate::symbolic::Atom::new("x2"), -1)]);
        assert_eq!(substitute(&a, &vals).unwrap(), q(4, 3));
    }
}
