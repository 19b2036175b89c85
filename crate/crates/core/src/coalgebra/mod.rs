//! The cobrackets `delta` and `delta'` on generating series, their action on
//! symbols and wedges, and the coproduct.
//!
//! For `X = [x1..xd | L1..Ld]` the cobracket is split as
//! `delta = delta1 + delta2 + delta3 + delta4`:
//!
//! ```text
//! delta1 = X ^ sum_p L_p [x_p]_0
//! delta2 = sum_{p>=2} [x_p..x_d | L_p..L_d] ^ [x_1..x_{p-1} | L_1..L_{p-1}]
//! delta3 = sum_{p<q} [x_1..(x_p...x_q)..x_d | L_1..L_p, L_{q+1}..L_d]
//!                      ^ [x_{p+1}..x_q | L_{p+1}-L_p, .., L_q-L_p]
//! delta4 = sum_{p<q} (-1)^(q-p) [x_1..(x_p...x_q)..x_d | L_1..L_{p-1}, L_q..L_d]
//!                      ^ [x_{q-1}^-1..x_p^-1 | L_q-L_{q-1}, .., L_q-L_p]
//! ```
//!
//! `delta'` replaces the right factor of `delta4` by
//! `inv[x_p..x_{q-1} | L_p-L_q, .., L_{q-1}-L_q]`.

mod coproduct;

pub use coproduct::{
    coassociativity_defect, coproduct, coproduct_expr, coproduct_mod_products,
    coproduct_of_symbol, coproduct_term, depth2_written_out, index_sequences,
    mod_products_matches_delta, surviving_sequences, verify_coassociativity,
    verify_depth2_written_out, verify_mod_products, IndexSequence,
};

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::inversion::inv_expr;
use crate::report::CheckReport;
use crate::symbolic::arg::{Arg, Violation, ViolationKind};
use crate::symbolic::expr::{coefficient_at_index, resolve_symbol};
use crate::symbolic::symbol::wedge_combs;
use crate::symbolic::{Expr, LinComb, Symbol, SymbolComb, TForm, TPoly, Word, WordComb};
use crate::Q;

/// Which cobracket to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Cobracket {
    Delta,
    DeltaPrime,
}

impl Cobracket {
    pub fn name(self) -> &'static str {
        match self {
            Cobracket::Delta => "delta",
            Cobracket::DeltaPrime => "delta'",
        }
    }
}

/// `(x_1, .., x_{p-1}, x_p*...*x_q, x_{q+1}, .., x_d)` for 1-based `p <= q`.
pub(crate) fn contract(args: &[Arg], p: usize, q: usize) -> Result<Vec<Arg>> {
    let prod = Arg::product(&args[p - 1..q]).ok_or_else(|| {
        Error::inadmissible(
            args,
            Violation {
                start: p - 1,
                end: q - 1,
                kind: ViolationKind::ZeroTimesInfinity,
            },
        )
    })?;
    let mut out = args[..p - 1].to_vec();
    out.push(prod);
    out.extend_from_slice(&args[q..]);
    Ok(out)
}

fn shifted(slots: &[TForm], by: TForm) -> Vec<TForm> {
    slots.iter().map(|&l| l - by).collect()
}

/// One of the four parts of the cobracket of `[args | slots]`, as a wedge
/// expression. `part` is 1..=4.
pub fn delta_part(part: u8, args: &[Arg], slots: &[TForm], which: Cobracket) -> Result<Expr> {
    assert_eq!(args.len(), slots.len());
    let d = args.len();
    if args.iter().any(Arg::is_infinity) {
        return Err(Error::Domain(
            "the cobracket of a series with an infinite entry is taken after reduction".into(),
        ));
    }
    let mut terms = Vec::new();
    match part {
        1 => {
            let logs = Expr::Sum(
                args.iter()
                    .zip(slots)
                    .map(|(a, &l)| Expr::log(a).mul_form(l))
                    .collect(),
            );
            terms.push(Expr::wedge(Expr::series(args.to_vec(), slots.to_vec()), logs));
        }
        2 => {
            for p in 2..=d {
                let left = Expr::series(args[p - 1..].to_vec(), slots[p - 1..].to_vec());
                let right = Expr::series(args[..p - 1].to_vec(), slots[..p - 1].to_vec());
                terms.push(Expr::wedge(left, right));
            }
        }
        3 => {
            for p in 1..d {
                for q in p + 1..=d {
                    let mut ls = slots[..p].to_vec();
                    ls.extend_from_slice(&slots[q..]);
                    let left = Expr::series(contract(args, p, q)?, ls);
                    let right = Expr::series(
                        args[p..q].to_vec(),
                        shifted(&slots[p..q], slots[p - 1]),
                    );
                    terms.push(Expr::wedge(left, right));
                }
            }
        }
        4 => {
            for p in 1..d {
                for q in p + 1..=d {
                    let mut ls = slots[..p - 1].to_vec();
                    ls.extend_from_slice(&slots[q - 1..]);
                    let left = Expr::series(contract(args, p, q)?, ls);
                    let right = match which {
                        Cobracket::Delta => Expr::series(
                            args[p - 1..q - 1].iter().rev().map(Arg::inverse).collect(),
                            slots[p - 1..q - 1]
                                .iter()
                                .rev()
                                .map(|&l| slots[q - 1] - l)
                                .collect(),
                        ),
                        Cobracket::DeltaPrime => {
                            inv_expr(&args[p - 1..q - 1], &shifted(&slots[p - 1..q - 1], slots[q - 1]))
                        }
                    };
                    let sign = if (q - p) % 2 == 0 { 1 } else { -1 };
                    terms.push(Expr::wedge(left, right).scale_int(sign));
                }
            }
        }
        _ => panic!("cobracket part {part} out of range 1..=4"),
    }
    Ok(Expr::Sum(terms))
}

/// The full cobracket of `[args | slots]` as a wedge expression.
pub fn delta_expr(args: &[Arg], slots: &[TForm], which: Cobracket) -> Result<Expr> {
    Ok(Expr::Sum(
        (1..=4)
            .map(|i| delta_part(i, args, slots, which))
            .collect::<Result<_>>()?,
    ))
}

/// Applies the cobracket to a linear series expression (sums, scalings,
/// multiplication and division by forms of series). Constants of weight at
/// most 1 have zero cobracket.
pub fn delta_linear(e: &Expr, which: Cobracket) -> Result<Expr> {
    Ok(match e {
        Expr::Series { args, slots } => delta_expr(args, slots, which)?,
        Expr::Const(c) => {
            if c.keys().all(|w| w.weight() <= 1) {
                Expr::zero()
            } else {
                return Err(Error::Domain(
                    "cobracket of a constant of weight > 1 in a series expression".into(),
                ));
            }
        }
        Expr::Scale(c, inner) => Expr::Scale(c.clone(), Box::new(delta_linear(inner, which)?)),
        Expr::MulForm(l, inner) => Expr::MulForm(*l, Box::new(delta_linear(inner, which)?)),
        Expr::DivForm(l, inner) => Expr::DivForm(*l, Box::new(delta_linear(inner, which)?)),
        Expr::Sum(v) => Expr::Sum(
            v.iter()
                .map(|x| delta_linear(x, which))
                .collect::<Result<_>>()?,
        ),
        Expr::Exp { .. } | Expr::Prod(..) => {
            return Err(Error::Domain(
                "the cobracket acts linearly on series, not on products".into(),
            ))
        }
    })
}

/// The cobracket of `[args | t1..td]` expanded to total weight
/// `weight_bound`.
pub fn delta_series(args: &[Arg], weight_bound: u32, which: Cobracket) -> Result<TPoly<Word>> {
    let d = args.len() as u32;
    let e = delta_expr(args, &TForm::identity(args.len()), which)?;
    e.expand(weight_bound.saturating_sub(d))
}

type DeltaKey = (Vec<Arg>, u32, Cobracket);
type DeltaMemo = RwLock<HashMap<DeltaKey, Arc<TPoly<Word>>>>;

fn delta_memo() -> &'static DeltaMemo {
    static MEMO: OnceLock<DeltaMemo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Homogeneous component of `t`-degree `deg` of the cobracket of the
/// standard series on `args`; memoized.
fn delta_component(args: &[Arg], deg: u32, which: Cobracket) -> Result<Arc<TPoly<Word>>> {
    let key = (args.to_vec(), deg, which);
    if let Some(v) = delta_memo().read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let e = delta_expr(args, &TForm::identity(args.len()), which)?;
    let v = Arc::new(e.component(deg)?);
    delta_memo().write().unwrap().entry(key).or_insert(v.clone());
    Ok(v)
}

/// The cobracket of one symbol in the exterior square. Symbols with a zero
/// entry vanish, symbols with an infinite entry are first reduced, and the
/// cobracket is zero in weight 1.
pub fn delta_symbol(sym: &Symbol, which: Cobracket) -> Result<WordComb> {
    let resolved = resolve_symbol(sym)?;
    let mut out = WordComb::zero();
    for (s, c) in &resolved {
        if s.weight() <= 1 {
            continue;
        }
        let deg = s.index.iter().map(|n| n - 1).sum();
        let comp = delta_component(&s.args, deg, which)?;
        out.add_scaled(&coefficient_at_index(&comp, &s.index), c);
    }
    Ok(out)
}

/// The cobracket of a linear combination of symbols.
pub fn delta(comb: &SymbolComb, which: Cobracket) -> Result<WordComb> {
    let mut out = WordComb::zero();
    for (s, c) in comb {
        out.add_scaled(&delta_symbol(s, which)?, c);
    }
    Ok(out)
}

/// The cobracket of a combination of one-symbol words.
pub fn delta_words(w: &WordComb, which: Cobracket) -> Result<WordComb> {
    let mut out = WordComb::zero();
    for (word, c) in w {
        let s = word
            .as_symbol()
            .ok_or_else(|| Error::Domain(format!("{word} is not a single symbol")))?;
        out.add_scaled(&delta_symbol(s, which)?, c);
    }
    Ok(out)
}

/// The map `a ^ b -> delta(a) ^ b - a ^ delta(b)` from the exterior square
/// to the exterior cube.
pub fn d2_map(w: &WordComb, which: Cobracket) -> Result<WordComb> {
    let mut out = WordComb::zero();
    for (word, c) in w {
        let comps = word
            .wedge_components()
            .filter(|v| v.len() == 2)
            .ok_or_else(|| Error::Domain(format!("{word} is not in the exterior square")))?;
        let a = LinComb::single(Word::symbol(comps[0].clone()));
        let b = LinComb::single(Word::symbol(comps[1].clone()));
        let da = delta_symbol(comps[0], which)?;
        let db = delta_symbol(comps[1], which)?;
        out.add_scaled(&wedge_combs(&da, &b), c);
        out.add_scaled(&wedge_combs(&a, &db), &-c.clone());
    }
    Ok(out)
}

/// `delta o delta` into the exterior cube.
pub fn delta_squared(comb: &SymbolComb, which: Cobracket) -> Result<WordComb> {
    d2_map(&delta(comb, which)?, which)
}

/// Checks `delta^2 = 0` on the standard series of depth `depth` at every
/// multi-index of weight `weight`, over the atoms `x1..xd`.
pub fn check_delta_squared_at(depth: usize, weight: u32, which: Cobracket) -> Result<CheckReport> {
    let args = standard_atoms(depth);
    let name = format!("{}^2 = 0, depth {depth}, weight {weight}", which.name());
    if (weight as usize) < depth {
        return Ok(CheckReport::pass(name, 0));
    }
    let deg = weight - depth as u32;
    let comp = delta_component(&args, deg, which)?;
    let mut checked = 0;
    for (m, c) in comp.iter() {
        checked += 1;
        let d2 = d2_map(c, which)?;
        if !d2.is_zero() {
            return Ok(CheckReport::fail(
                name,
                checked,
                format!("coefficient of {m}: {d2}"),
            ));
        }
    }
    Ok(CheckReport::pass(name, checked))
}

/// The `delta^2 = 0` suite for all depths `1..=max_depth` and weights
/// `2..=max_weight`, run in parallel.
pub fn verify_delta_squared(max_depth: usize, max_weight: u32, which: Cobracket) -> CheckReport {
    let cases: Vec<(usize, u32)> = (1..=max_depth)
        .flat_map(|d| (2.max(d as u32)..=max_weight).map(move |w| (d, w)))
        .collect();
    let parts: Vec<CheckReport> = cases
        .par_iter()
        .map(|&(d, w)| {
            check_delta_squared_at(d, w, which).unwrap_or_else(|e| {
                CheckReport::fail(format!("depth {d}, weight {w}"), 0, e.to_string())
            })
        })
        .collect();
    crate::report::merge(
        format!("{}^2 = 0 for depth <= {max_depth}, weight <= {max_weight}", which.name()),
        &parts,
    )
}

/// The atoms `x1, .., xd`.
pub fn standard_atoms(d: usize) -> Vec<Arg> {
    (1..=d).map(|i| Arg::atom(&format!("x{i}"))).collect()
}

/// Difference of two polynomials, reported at the first differing monomial.
pub fn first_difference(a: &TPoly<Word>, b: &TPoly<Word>) -> Option<String> {
    let mut diff = a.clone();
    diff.add_scaled(b, &-Q::one());
    let first = diff
        .iter()
        .next()
        .map(|(m, c)| format!("coefficient of {m} differs by {c}"));
    first
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Arg {
        Arg::atom("x")
    }

    fn sym(args: Vec<Arg>, index: Vec<u32>) -> SymbolComb {
        LinComb::single(Symbol::new(args, index))
    }

    fn wedge(a: Symbol, b: Symbol) -> WordComb {
        let (s, w) = Word::wedge(vec![a, b]).unwrap();
        LinComb::term(w, Q::from_integer(s.into()))
    }

    #[test]
    fn depth_one_cobracket() {
        for n in 2..=5 {
            let d = delta(&sym(vec![x()], vec![n]), Cobracket::Delta).unwrap();
            assert_eq!(d, wedge(Symbol::depth1(x(), n - 1), Symbol::log(x())));
        }
        let d2 = delta(&sym(vec![x()], vec![2]), Cobracket::Delta).unwrap();
        assert_eq!(d2.to_string(), "[x;1] ^ [x;0]");
    }

    #[test]
    fn weight_one_is_zero() {
        assert!(delta(&sym(vec![x()], vec![1]), Cobracket::Delta).unwrap().is_zero());
        assert!(delta(&LinComb::single(Symbol::log(x())), Cobracket::Delta)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn depth_two_weight_two() {
        // substituting r = s = 1 into the depth-2 closed form
        let x1 = Arg::atom("x1");
        let x2 = Arg::atom("x2");
        let x12 = x1.mul(&x2).unwrap();
        let d = delta(&sym(vec![x1.clone(), x2.clone()], vec![1, 1]), Cobracket::Delta).unwrap();
        let mut want = wedge(Symbol::depth1(x2.clone(), 1), Symbol::depth1(x1.clone(), 1));
        want.add_assign(&wedge(Symbol::depth1(x12.clone(), 1), Symbol::depth1(x2, 1)));
        want.sub_assign(&wedge(Symbol::depth1(x12.clone(), 1), Symbol::depth1(x1.inverse(), 1)));
        assert_eq!(d, want);

        let dp = delta(&sym(vec![x1.clone(), Arg::atom("x2")], vec![1, 1]), Cobracket::DeltaPrime)
            .unwrap();
        let mut want_p = wedge(Symbol::depth1(Arg::atom("x2"), 1), Symbol::depth1(x1.clone(), 1));
        want_p.add_assign(&wedge(Symbol::depth1(x12.clone(), 1), Symbol::depth1(Arg::atom("x2"), 1)));
        want_p.sub_assign(&wedge(Symbol::depth1(x12.clone(), 1), Symbol::depth1(x1.clone(), 1)));
        want_p.sub_assign(&wedge(Symbol::depth1(x12, 1), Symbol::log(x1)));
        assert_eq!(dp, want_p);
    }

    #[test]
    fn zero_entries_vanish() {
        let d = delta(&sym(vec![x(), Arg::Zero], vec![2, 1]), Cobracket::Delta).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn inadmissible_input_is_rejected() {
        let r = delta(&sym(vec![x(), x().inverse()], vec![1, 1]), Cobracket::Delta);
        assert!(matches!(r, Err(Error::Inadmissible { .. })));
    }

    #[test]
    fn delta_prime_agrees_in_depth_one() {
        for n in 2..=5 {
            let s = sym(vec![x()], vec![n]);
            assert_eq!(
                delta(&s, Cobracket::Delta).unwrap(),
                delta(&s, Cobracket::DeltaPrime).unwrap()
            );
        }
    }

    #[test]
    fn small_delta_squared() {
        for which in [Cobracket::Delta, Cobracket::DeltaPrime] {
            assert!(delta_squared(&sym(vec![x()], vec![4]), which).unwrap().is_zero());
            let r = check_delta_squared_at(2, 4, which).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn grading_is_respected() {
        let args = standard_atoms(2);
        let p = delta_series(&args, 5, Cobracket::Delta).unwrap();
        for (m, c) in p.iter() {
            for w in c.keys() {
                assert_eq!(w.weight(), m.degree() + 2);
            }
        }
    }
}
