//! Rewriting weight <= 3 symbols into depth 1 with the built-in relations.

use super::concrete::{normalize, ConcreteTerms};
use crate::error::{Error, Result};
use crate::fields::FieldElem;
use crate::symbolic::Symbol;
use crate::Q;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Pushes `c * [a]_n`, dropping `a = 0` and rejecting `a = 1`.
fn push<E: FieldElem>(out: &mut ConcreteTerms<E>, a: E, n: u32, c: Q, from: &Symbol<E>) -> Result<()> {
    if a.is_zero() {
        return Ok(());
    }
    if a.is_one() {
        return Err(Error::Guard(format!("rewriting {from} produces the argument 1")));
    }
    out.push((Symbol::depth1(a, n), c));
    Ok(())
}

fn div<E: FieldElem>(a: &E, b: &E, from: &Symbol<E>) -> Result<E> {
    a.div(b)
        .map_err(|_| Error::Guard(format!("rewriting {from} divides by zero")))
}

/// `[a,b]_{1,1} = [a(1-b)/(1-ab)]_2 - [a]_2`.
fn rewrite_11<E: FieldElem>(a: &E, b: &E, c: &Q, from: &Symbol<E>, out: &mut ConcreteTerms<E>) -> Result<()> {
    let ab = a.mul(b);
    let w = div(&a.mul(&b.one_minus()), &ab.one_minus(), from)?;
    push(out, w, 2, c.clone(), from)?;
    push(out, a.clone(), 2, -c.clone(), from)
}

/// `[a,b]_{2,1}` as minus the six depth-1 terms of its relation.
fn rewrite_21<E: FieldElem>(a: &E, b: &E, c: &Q, from: &Symbol<E>, out: &mut ConcreteTerms<E>) -> Result<()> {
    let ab = a.mul(b);
    let d = ab.one_minus();
    let terms = [
        (a.clone(), 1),
        (div(&b.one_minus(), &d, from)?, 1),
        (ab.clone(), 1),
        (div(&ab.neg(), &d, from)?, 1),
        (b.one_minus(), -1),
        (div(&a.mul(&b.one_minus()), &d, from)?, -1),
    ];
    for (arg, k) in terms {
        push(out, arg, 3, -c.clone() * q(k), from)?;
    }
    Ok(())
}

/// `[a,b,e]_{1,1,1}` as minus the eight depth-1 terms of its relation.
fn rewrite_111<E: FieldElem>(
    a: &E,
    b: &E,
    e: &E,
    c: &Q,
    from: &Symbol<E>,
    out: &mut ConcreteTerms<E>,
) -> Result<()> {
    let abe = a.mul(b).mul(e);
    let d = abe.one_minus();
    let ob = b.one_minus();
    let nb = b.neg();
    let terms = [
        (div(&nb, &ob, from)?, -1),
        (div(&a.one_minus(), &d, from)?, 1),
        (a.mul(b), -1),
        (div(&a.mul(b).mul(&e.one_minus()), &d, from)?, 1),
        (a.one_minus(), -1),
        (div(&nb.mul(&a.one_minus()), &ob, from)?, 1),
        (div(&nb.mul(&e.one_minus()), &ob, from)?, 1),
        (div(&nb.mul(&a.one_minus()).mul(&e.one_minus()), &d.mul(&ob), from)?, -1),
    ];
    for (arg, k) in terms {
        push(out, arg, 3, -c.clone() * q(k), from)?;
    }
    Ok(())
}

fn rewrite<E: FieldElem>(s: &Symbol<E>, c: &Q, out: &mut ConcreteTerms<E>) -> Result<()> {
    match (s.args.as_slice(), s.index.as_slice()) {
        ([_], _) => {
            out.push((s.clone(), c.clone()));
            Ok(())
        }
        ([a, b], [1, 1]) => rewrite_11(a, b, c, s, out),
        ([a, b], [2, 1]) => rewrite_21(a, b, c, s, out),
        ([a, b], [1, 2]) => {
            // [a,b]_{1,2} = -[b,a]_{2,1} - [ab]_3
            let swapped = Symbol::new(vec![b.clone(), a.clone()], vec![2, 1]);
            rewrite_21(b, a, &-c.clone(), &swapped, out)?;
            push(out, a.mul(b), 3, -c.clone(), s)
        }
        ([a, b, e], [1, 1, 1]) => rewrite_111(a, b, e, c, s, out),
        _ => Err(Error::Domain(format!(
            "no depth-1 rewriting for {s} (weight {}, depth {})",
            s.weight(),
            s.depth()
        ))),
    }
}

/// Rewrites every symbol of weight at most 3 into depth 1. Depth-1 terms are
/// returned unchanged; the result holds modulo 2-torsion.
pub fn reduce_to_depth1<E: FieldElem>(terms: &[(Symbol<E>, Q)]) -> Result<ConcreteTerms<E>> {
    let mut out = Vec::new();
    for (s, c) in terms {
        rewrite(s, c, &mut out)?;
    }
    Ok(normalize(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::concrete::show_terms;

    fn r(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn depth_one_is_unchanged() {
        let t = vec![(Symbol::depth1(r(2, 1), 3), r(1, 1)), (Symbol::log(r(5, 1)), r(-2, 1))];
        assert_eq!(reduce_to_depth1(&t).unwrap(), t);
    }

    #[test]
    fn eleven_at_a_point() {
        // [2,3]_{1,1} -> [2*(1-3)/(1-6)]_2 - [2]_2 = [4/5]_2 - [2]_2
        let t = reduce_to_depth1(&[(Symbol::new(vec![r(2, 1), r(3, 1)], vec![1, 1]), r(1, 1))]).unwrap();
        assert_eq!(
            t,
            vec![(Symbol::depth1(r(4, 5), 2), r(1, 1)), (Symbol::depth1(r(2, 1), 2), r(-1, 1))]
        );
    }

    #[test]
    fn twelve_goes_through_twenty_one() {
        let s = Symbol::new(vec![r(2, 1), r(3, 1)], vec![1, 2]);
        let t = reduce_to_depth1(&[(s, r(1, 1))]).unwrap();
        assert!(t.iter().all(|(s, _)| s.depth() == 1), "{}", show_terms(&t));
        // the [6]_3 from -[3,2]_{2,1} cancels against -[xy]_3
        assert!(t.iter().all(|(s, _)| s.args[0] != r(6, 1)), "{}", show_terms(&t));
        assert!(t.contains(&(Symbol::depth1(r(3, 1), 3), r(1, 1))), "{}", show_terms(&t));
    }

    #[test]
    fn depth_three_has_eight_terms() {
        let s = Symbol::new(vec![r(2, 1), r(3, 1), r(5, 1)], vec![1, 1, 1]);
        let t = reduce_to_depth1(&[(s, r(1, 1))]).unwrap();
        assert_eq!(t.len(), 8, "{}", show_terms(&t));
        assert!(t.iter().all(|(s, _)| s.weight() == 3 && s.depth() == 1));
    }

    #[test]
    fn weight_four_is_refused() {
        let s = Symbol::new(vec![r(2, 1), r(3, 1)], vec![3, 1]);
        assert!(reduce_to_depth1(&[(s, r(1, 1))]).is_err());
    }

    #[test]
    fn zero_outputs_vanish() {
        // a zero first argument kills both terms of the 1,1 rewrite
        let s = Symbol::new(vec![r(0, 1), r(3, 1)], vec![1, 1]);
        assert!(reduce_to_depth1(&[(s, r(1, 1))]).unwrap().is_empty());
    }
}
