//! The realization map: `[x]_0 -> log|x|`, `[x]_1 -> -log|1-x|`,
//! `[x]_n -> L_n(x)`, and higher depth (weight <= 3) through the depth-1
//! rewriting of the relations module.

use num_traits::ToPrimitive;

use super::polylog::single_valued_l;
use super::Cx;
use crate::error::{Error, Result};
use crate::relations::reduce_to_depth1;
use crate::symbolic::Symbol;
use crate::Q;

/// Arguments closer than this to `1` (and consecutive products of
/// higher-depth tuples) are refused so that samplers can draw again.
pub const GUARD_EPS: f64 = 1e-3;

fn guard(s: &Symbol<Cx>) -> Result<()> {
    if s.is_log() {
        return Ok(());
    }
    for i in 0..s.args.len() {
        let mut acc = num_complex::Complex64::new(1.0, 0.0);
        for a in &s.args[i..] {
            acc *= a.0;
            if !acc.re.is_finite() || !acc.im.is_finite() {
                return Err(Error::Guard(format!("{s} has a non-finite argument")));
            }
            if (acc - 1.0).norm() < GUARD_EPS {
                return Err(Error::Guard(format!("{s} is within {GUARD_EPS} of a product equal to 1")));
            }
        }
    }
    Ok(())
}

fn depth1_value(x: Cx, n: u32) -> Result<f64> {
    let z = x.0;
    if z.norm() == 0.0 {
        return match n {
            0 => Err(Error::Guard("log of 0".into())),
            _ => Ok(0.0),
        };
    }
    match n {
        0 => Ok(z.norm().ln()),
        _ => single_valued_l(n, z),
    }
}

/// Real value of one symbol of weight <= 3 (any weight in depth 1).
pub fn realize_symbol(s: &Symbol<Cx>) -> Result<f64> {
    guard(s)?;
    if s.depth() == 1 {
        return depth1_value(s.args[0], s.index[0]);
    }
    if s.weight() > 3 {
        return Err(Error::Unsupported(format!(
            "{s}: no realization in weight {} and depth {}",
            s.weight(),
            s.depth()
        )));
    }
    let reduced = reduce_to_depth1(&[(s.clone(), Q::from_integer(1.into()))])?;
    realize(&reduced)
}

/// Linear extension of [`realize_symbol`].
pub fn realize(terms: &[(Symbol<Cx>, Q)]) -> Result<f64> {
    let mut acc = 0.0;
    for (s, c) in terms {
        acc += c.to_f64().unwrap_or(f64::NAN) * realize_symbol(s)?;
    }
    Ok(acc)
}

/// Realization of `sum c (a ^ b)`. Components of different weights are
/// oriented heavier-first and paired by the product form at one point;
/// equal weights use the alternating form over the pair of points `(p, q)`.
/// `at_p` and `at_q` list the same terms evaluated at the two points.
pub fn realize_wedge(at_p: &[(Symbol<Cx>, Symbol<Cx>, Q)], at_q: &[(Symbol<Cx>, Symbol<Cx>, Q)]) -> Result<f64> {
    assert_eq!(at_p.len(), at_q.len(), "same terms at both points");
    let mut acc = 0.0;
    for ((a, b, c), (a2, b2, _)) in at_p.iter().zip(at_q) {
        let c = c.to_f64().unwrap_or(f64::NAN);
        let (wa, wb) = (a.weight(), b.weight());
        if wa == wb {
            acc += c * (realize_symbol(a)? * realize_symbol(b2)? - realize_symbol(b)? * realize_symbol(a2)?);
        } else if wa > wb {
            acc += c * realize_symbol(a)? * realize_symbol(b)?;
        } else {
            acc -= c * realize_symbol(b)? * realize_symbol(a)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn cx(re: f64, im: f64) -> Cx {
        Cx(Complex64::new(re, im))
    }

    fn one() -> Q {
        Q::from_integer(1.into())
    }

    #[test]
    fn weight_one_conventions() {
        let x = cx(0.3, 0.4);
        let l0 = realize_symbol(&Symbol::log(x)).unwrap();
        let l1 = realize_symbol(&Symbol::depth1(x, 1)).unwrap();
        assert!((l0 - 0.5f64.ln()).abs() < 1e-15);
        assert!((l1 + (Complex64::new(1.0, 0.0) - x.0).norm().ln()).abs() < 1e-15);
    }

    #[test]
    fn inversion_pair_vanishes() {
        let x = cx(0.7, -1.3);
        let inv = Cx(1.0 / x.0);
        let t = vec![(Symbol::depth1(x, 2), one()), (Symbol::depth1(inv, 2), one())];
        assert!(realize(&t).unwrap().abs() < 1e-10);
    }

    #[test]
    fn guard_near_one() {
        assert!(realize_symbol(&Symbol::depth1(cx(1.0 + 1e-5, 0.0), 2)).is_err());
        assert!(realize_symbol(&Symbol::new(vec![cx(2.0, 0.0), cx(0.5, 1e-6)], vec![1, 1])).is_err());
    }

    #[test]
    fn same_symbol_twice_is_zero() {
        let a = Symbol::depth1(cx(0.2, 0.1), 1);
        let p = vec![(a.clone(), a.clone(), one())];
        assert_eq!(realize_wedge(&p, &p).unwrap(), 0.0);
    }

    #[test]
    fn weight_four_depth_two_is_unsupported() {
        let s = Symbol::new(vec![cx(0.2, 0.1), cx(0.3, 0.0)], vec![3, 1]);
        assert!(realize_symbol(&s).is_err());
    }
}
