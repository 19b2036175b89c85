//! Formal arguments, `t`-linear forms, symbols, linear combinations and
//! coefficient extraction from generating series.

pub mod arg;
pub mod expr;
pub mod lincomb;
pub mod parse;
pub mod poly;
pub mod symbol;
pub mod tform;

pub use arg::{admissible, find_violation, Arg, Atom, Violation, ViolationKind};
pub use expr::{resolve_symbol, Expr, ProdKind};
pub use lincomb::LinComb;
pub use poly::{Monomial, TPoly};
pub use symbol::{Joint, Symbol, SymbolComb, Word, WordComb};
pub use tform::TForm;

use crate::error::Result;
use crate::Q;

/// One generating-series factor `scalar * [args | tslots] / prod(t_a - t_b)`.
///
/// A single term rarely divides cleanly; formal sums of terms are expanded
/// with [`expand`].
#[derive(Clone, Debug)]
pub struct SeriesTerm {
    pub args: Vec<Arg>,
    pub tslots: Vec<TForm>,
    pub scalar: Q,
    /// Factors `1/(t_a - t_b)`; `b = None` stands for `1/t_a`. Indices are
    /// 0-based (`0` is `t1`).
    pub denominators: Vec<(usize, Option<usize>)>,
}

impl SeriesTerm {
    pub fn new(args: Vec<Arg>, tslots: Vec<TForm>) -> Self {
        SeriesTerm {
            args,
            tslots,
            scalar: num_traits::One::one(),
            denominators: Vec::new(),
        }
    }

    pub fn to_expr(&self) -> Expr {
        let mut e = Expr::series(self.args.clone(), self.tslots.clone()).scale(self.scalar.clone());
        for &(a, b) in &self.denominators {
            let form = match b {
                Some(b) => TForm::var(a) - TForm::var(b),
                None => TForm::var(a),
            };
            e = e.div_form(form);
        }
        e
    }
}

/// Expands a formal sum of series terms, keeping coefficients of total
/// weight at most `weight_bound`.
pub fn expand(terms: &[SeriesTerm], weight_bound: u32) -> Result<TPoly<Word>> {
    // Terms sharing a denominator are summed before dividing, since only the
    // sum need be divisible. A coefficient of t-degree m in a group of depth d
    // with k denominators has weight d + k + m.
    let mut groups: Vec<(Vec<(usize, Option<usize>)>, usize, Vec<Expr>)> = Vec::new();
    for t in terms {
        let mut den = t.denominators.clone();
        den.sort();
        let numer = SeriesTerm {
            denominators: Vec::new(),
            ..t.clone()
        }
        .to_expr();
        match groups.iter_mut().find(|(d, _, _)| *d == den) {
            Some((_, depth, v)) => {
                *depth = (*depth).max(t.args.len());
                v.push(numer);
            }
            None => groups.push((den, t.args.len(), vec![numer])),
        }
    }
    let mut out = TPoly::zero();
    for (den, depth, numers) in groups {
        let used = (depth + den.len()) as u32;
        if used > weight_bound {
            continue;
        }
        let e = den.into_iter().fold(Expr::Sum(numers), |e, (a, b)| {
            let form = match b {
                Some(b) => TForm::var(a) - TForm::var(b),
                None => TForm::var(a),
            };
            e.div_form(form)
        });
        out.add_assign(&e.expand(weight_bound - used)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::symbol::words_to_symbols;

    #[test]
    fn expand_depth_one_to_weight_three() {
        let t = SeriesTerm::new(vec![Arg::atom("x")], vec![TForm::var(0)]);
        let p = expand(&[t], 3).unwrap();
        assert_eq!(p.len(), 3);
        for n in 1..=3 {
            let c = words_to_symbols(&p.coeff(&Monomial::from_exponents(&[n - 1])));
            assert_eq!(c, LinComb::single(Symbol::depth1(Arg::atom("x"), n)));
        }
    }

    #[test]
    fn expand_with_divided_difference() {
        let y = || vec![Arg::atom("y")];
        let a = SeriesTerm {
            denominators: vec![(0, Some(1))],
            ..SeriesTerm::new(y(), vec![TForm::var(0)])
        };
        let b = SeriesTerm {
            scalar: -Q::from_integer(1.into()),
            denominators: vec![(0, Some(1))],
            ..SeriesTerm::new(y(), vec![TForm::var(1)])
        };
        // individually not divisible
        assert!(expand(std::slice::from_ref(&a), 4).is_err());
        let p = expand(&[a, b], 4).unwrap();
        // weights 2..=4 correspond to degrees 0..=2 of the quotient
        for (m, c) in p.iter() {
            assert_eq!(
                words_to_symbols(c),
                LinComb::single(Symbol::depth1(Arg::atom("y"), m.degree() + 2))
            );
        }
        assert_eq!(p.len(), 6);
    }
}
