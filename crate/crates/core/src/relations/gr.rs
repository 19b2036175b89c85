//! Translation of the symbols `{x}_n` and `{x,y}_{n-1,1}` (weight <= 4) into
//! the symbols of this crate.

use std::fmt;

use super::concrete::{check_concrete, normalize, ConcreteTerms};
use crate::error::{Error, Result};
use crate::fields::FieldElem;
use crate::symbolic::{find_violation, Arg, Symbol, SymbolComb};
use crate::Q;

/// `{x}_n` (one argument) or `{x,y}_{n-1,1}` (two arguments).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrSymbol<A> {
    pub args: Vec<A>,
    pub index: Vec<u32>,
}

impl<A: fmt::Display> fmt::Display for GrSymbol<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args.iter().map(ToString::to_string).collect();
        let idx: Vec<String> = self.index.iter().map(ToString::to_string).collect();
        write!(f, "{{{};{}}}", args.join(","), idx.join(","))
    }
}

enum Shape {
    Depth1(u32),
    /// `{x,y}_{n-1,1}` with `n` = 3 or 4; the sign of `[y]_n` is `+1` for
    /// `n = 4` and `-1` for `n = 3`.
    Depth2(u32),
}

fn shape<A: fmt::Display>(s: &GrSymbol<A>) -> Result<Shape> {
    match (s.args.len(), s.index.as_slice()) {
        (1, [n]) if (2..=4).contains(n) => Ok(Shape::Depth1(*n)),
        (2, [2, 1]) => Ok(Shape::Depth2(3)),
        (2, [3, 1]) => Ok(Shape::Depth2(4)),
        _ => Err(Error::Domain(format!(
            "{s}: only {{x}}_n for n = 2..4 and {{x,y}}_{{2,1}}, {{x,y}}_{{3,1}} are translated"
        ))),
    }
}

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// `{x}_n -> [x]_n`, `{x,y}_{2,1} -> -[x/y,y]_{2,1} - [x]_3 - [y]_3`,
/// `{x,y}_{3,1} -> -[x/y,y]_{3,1} - [x]_4 + [y]_4`, over a concrete field.
pub fn gr_translate<E: FieldElem>(s: &GrSymbol<E>) -> Result<ConcreteTerms<E>> {
    let inadmissible = |t: &Symbol<E>, v| Error::Guard(format!("{s} translates to {t}, which has {v}"));
    let out = match shape(s)? {
        Shape::Depth1(n) => {
            let t = Symbol::depth1(s.args[0].clone(), n);
            check_concrete(&t.args).map_err(|v| inadmissible(&t, v))?;
            vec![(t, q(1))]
        }
        Shape::Depth2(n) => {
            let (x, y) = (&s.args[0], &s.args[1]);
            let ratio = x.div(y).map_err(|_| Error::Guard(format!("{s}: y = 0")))?;
            let lead = Symbol::new(vec![ratio, y.clone()], vec![n - 1, 1]);
            check_concrete(&lead.args).map_err(|v| inadmissible(&lead, v))?;
            let sign_y = if n == 4 { 1 } else { -1 };
            vec![
                (lead, q(-1)),
                (Symbol::depth1(x.clone(), n), q(-1)),
                (Symbol::depth1(y.clone(), n), q(sign_y)),
            ]
        }
    };
    Ok(normalize(
        out.into_iter()
            .filter(|(t, _)| !t.args.iter().any(FieldElem::is_zero))
            .collect(),
    ))
}

/// The same translation for formal arguments.
pub fn gr_translate_formal(s: &GrSymbol<Arg>) -> Result<SymbolComb> {
    let check = |t: &Symbol| match find_violation(&t.args) {
        Some(v) => Err(Error::inadmissible(&t.args, v)),
        None => Ok(()),
    };
    let mut out = SymbolComb::zero();
    match shape(s)? {
        Shape::Depth1(n) => {
            let t = Symbol::depth1(s.args[0].clone(), n);
            check(&t)?;
            out.add_term(t, q(1));
        }
        Shape::Depth2(n) => {
            let (x, y) = (&s.args[0], &s.args[1]);
            let ratio = x
                .mul(&y.inverse())
                .ok_or_else(|| Error::UndefinedInfinity(format!("{x}/{y}")))?;
            let lead = Symbol::new(vec![ratio, y.clone()], vec![n - 1, 1]);
            check(&lead)?;
            let sign_y = if n == 4 { 1 } else { -1 };
            out.add_term(lead, q(-1));
            out.add_term(Symbol::depth1(x.clone(), n), q(-1));
            out.add_term(Symbol::depth1(y.clone(), n), q(sign_y));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse::parse_expression;

    fn gr(args: &[&str], index: &[u32]) -> GrSymbol<Arg> {
        GrSymbol {
            args: args.iter().map(|a| crate::symbolic::parse::parse_arg(a).unwrap()).collect(),
            index: index.to_vec(),
        }
    }

    #[test]
    fn depth_one() {
        assert_eq!(
            gr_translate_formal(&gr(&["x"], &[3])).unwrap(),
            parse_expression("[x;3]").unwrap()
        );
    }

    #[test]
    fn weight_three() {
        assert_eq!(
            gr_translate_formal(&gr(&["x", "y"], &[2, 1])).unwrap(),
            parse_expression("-[x*y^-1,y;2,1] - [x;3] - [y;3]").unwrap()
        );
    }

    #[test]
    fn weight_four() {
        assert_eq!(
            gr_translate_formal(&gr(&["x", "y"], &[3, 1])).unwrap(),
            parse_expression("-[x*y^-1,y;3,1] - [x;4] + [y;4]").unwrap()
        );
    }

    #[test]
    fn equal_arguments_are_rejected() {
        let e = gr_translate_formal(&gr(&["x", "x"], &[2, 1])).unwrap_err();
        assert!(matches!(e, Error::Inadmissible { .. }), "{e}");
        let c = GrSymbol {
            args: vec![Q::from_integer(3.into()), Q::from_integer(3.into())],
            index: vec![3, 1],
        };
        assert!(matches!(gr_translate(&c), Err(Error::Guard(_))));
    }

    #[test]
    fn concrete_translation() {
        let c = GrSymbol {
            args: vec![Q::from_integer(6.into()), Q::from_integer(3.into())],
            index: vec![2, 1],
        };
        let t = gr_translate(&c).unwrap();
        assert_eq!(t[0].0, Symbol::new(vec![Q::from_integer(2.into()), Q::from_integer(3.into())], vec![2, 1]));
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn other_shapes_are_refused() {
        assert!(gr_translate_formal(&gr(&["x"], &[5])).is_err());
        assert!(gr_translate_formal(&gr(&["x", "y"], &[1, 2])).is_err());
    }
}
