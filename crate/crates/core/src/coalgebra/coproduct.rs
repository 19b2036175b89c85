//! The coproduct of the generating series, its reduction modulo products
//! and a coassociativity check.
//!
//! Terms are indexed by sequences `i_0 <= j_0 < i_1 <= j_1 < ... < i_{k+1}`
//! with `i_0 = j_0 = 0` and `i_{k+1} = d + 1`. With `t_0 = 0` and
//! `x_{i->j} = x_i * ... * x_{j-1}` the term of a sequence is
//!
//! ```text
//! [x_{i1->i2}, .., x_{ik->i(k+1)} | t_{j1}, .., t_{jk}]
//!   (x) prod_a (-1)^(j_a - i_a) x_{ia->i(a+1)}^{t_{ja}}
//!         [x_{ja-1}^-1, .., x_{ia}^-1 | t_{ja} - t_{ja-1}, .., t_{ja} - t_{ia}]
//!         [x_{ja+1}, .., x_{i(a+1)-1} | t_{ja+1} - t_{ja}, .., t_{i(a+1)-1} - t_{ja}]
//! ```

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use super::Cobracket;
use crate::error::Result;
use crate::report::CheckReport;
use crate::symbolic::expr::{coefficient_at_index, log_comb, resolve_symbol};
use crate::symbolic::{Arg, Expr, Joint, Symbol, TForm, TPoly, Word, WordComb};
use crate::Q;

/// One admissible pair of index sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSequence {
    /// `i_0, .., i_{k+1}`.
    pub i: Vec<usize>,
    /// `j_0, .., j_k`.
    pub j: Vec<usize>,
}

impl IndexSequence {
    pub fn k(&self) -> usize {
        self.j.len() - 1
    }
}

impl fmt::Display for IndexSequence {
    /// Written `(0,0|1,1|2,2|3)`: the pairs `i_a,j_a` then `i_{k+1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (a, j) in self.j.iter().enumerate() {
            write!(f, "{},{}|", self.i[a], j)?;
        }
        write!(f, "{})", self.i[self.i.len() - 1])
    }
}

/// All index sequences for depth `d`.
pub fn index_sequences(d: usize) -> Vec<IndexSequence> {
    let mut out = Vec::new();
    let mut i = vec![0];
    let mut j = vec![0];
    fn rec(d: usize, i: &mut Vec<usize>, j: &mut Vec<usize>, out: &mut Vec<IndexSequence>) {
        let last_j = *j.last().unwrap();
        // close the sequence
        let mut closed = i.clone();
        closed.push(d + 1);
        out.push(IndexSequence {
            i: closed,
            j: j.clone(),
        });
        for next_i in last_j + 1..=d {
            for next_j in next_i..=d {
                i.push(next_i);
                j.push(next_j);
                rec(d, i, j, out);
                i.pop();
                j.pop();
            }
        }
    }
    rec(d, &mut i, &mut j, &mut out);
    out.sort();
    out
}

/// `x_{a->b}` with 1-based indices; `x_0` is taken to be `1`.
fn arrow(args: &[Arg], a: usize, b: usize) -> Result<Arg> {
    let lo = a.max(1);
    Ok(super::contract(&args[lo - 1..b - 1], 1, b - lo)?
        .pop()
        .unwrap_or_else(Arg::one))
}

/// The term of one index sequence as a tensor expression.
pub fn coproduct_term(args: &[Arg], slots: &[TForm], seq: &IndexSequence) -> Result<Expr> {
    let t = |r: usize| if r == 0 { TForm::ZERO } else { slots[r - 1] };
    let x = |r: usize| args[r - 1].clone();
    let k = seq.k();
    let left = Expr::series(
        (1..=k)
            .map(|a| arrow(args, seq.i[a], seq.i[a + 1]))
            .collect::<Result<_>>()?,
        (1..=k).map(|a| t(seq.j[a])).collect(),
    );
    let mut right = Expr::one();
    let mut sign = 1i64;
    for a in 0..=k {
        let (ia, ja, inext) = (seq.i[a], seq.j[a], seq.i[a + 1]);
        if (ja - ia) % 2 == 1 {
            sign = -sign;
        }
        let base = arrow(args, ia, inext)?;
        if !t(ja).is_zero() {
            right = Expr::times(
                right,
                Expr::Exp {
                    log: log_comb(&base),
                    form: t(ja),
                },
            );
        }
        // x_{ja-1}^-1, .., x_{ia}^-1, skipping the fictitious x_0
        let inv_range: Vec<usize> = (ia.max(1)..ja).rev().collect();
        let reversed = Expr::series(
            inv_range.iter().map(|&r| x(r).inverse()).collect(),
            inv_range.iter().map(|&r| t(ja) - t(r)).collect(),
        );
        let forward_range: Vec<usize> = (ja + 1..inext).collect();
        let forward = Expr::series(
            forward_range.iter().map(|&r| x(r)).collect(),
            forward_range.iter().map(|&r| t(r) - t(ja)).collect(),
        );
        right = Expr::times(Expr::times(right, reversed), forward);
    }
    Ok(Expr::tensor(left, right).scale_int(sign))
}

/// The whole coproduct of `[args | slots]` as a tensor expression.
pub fn coproduct_expr(args: &[Arg], slots: &[TForm]) -> Result<Expr> {
    Ok(Expr::Sum(
        index_sequences(args.len())
            .iter()
            .map(|s| coproduct_term(args, slots, s))
            .collect::<Result<_>>()?,
    ))
}

/// The coproduct of the standard series on `args` up to total weight
/// `weight_bound`.
pub fn coproduct(args: &[Arg], weight_bound: u32) -> Result<TPoly<Word>> {
    let e = coproduct_expr(args, &TForm::identity(args.len()))?;
    e.expand(weight_bound.saturating_sub(args.len() as u32))
}

type Memo = RwLock<HashMap<(Vec<Arg>, u32), Arc<TPoly<Word>>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

fn coproduct_component(args: &[Arg], deg: u32) -> Result<Arc<TPoly<Word>>> {
    let key = (args.to_vec(), deg);
    if let Some(v) = memo().read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let e = coproduct_expr(args, &TForm::identity(args.len()))?;
    let v = Arc::new(e.component(deg)?);
    memo().write().unwrap().entry(key).or_insert(v.clone());
    Ok(v)
}

fn tensor_word(left: Vec<Symbol>, right: Vec<Symbol>) -> Word {
    Word {
        joint: Joint::Tensor,
        factors: vec![left, right],
    }
}

/// The coproduct of one generator as two-factor tensor words. Log symbols
/// are primitive.
pub fn coproduct_of_symbol(sym: &Symbol) -> Result<WordComb> {
    let mut out = WordComb::zero();
    for (s, c) in &resolve_symbol(sym)? {
        if s.is_log() {
            out.add_term(tensor_word(vec![s.clone()], vec![]), c.clone());
            out.add_term(tensor_word(vec![], vec![s.clone()]), c.clone());
            continue;
        }
        let deg = s.index.iter().map(|n| n - 1).sum();
        let comp = coproduct_component(&s.args, deg)?;
        out.add_scaled(&coefficient_at_index(&comp, &s.index), c);
    }
    Ok(out)
}

fn merge(a: &[Symbol], b: &[Symbol]) -> Vec<Symbol> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v.sort();
    v
}

/// The coproduct of a commutative monomial, as `(left, right)` tensor words.
fn coproduct_of_monomial(factor: &[Symbol]) -> Result<WordComb> {
    let mut acc = WordComb::single(tensor_word(vec![], vec![]));
    for s in factor {
        let ds = coproduct_of_symbol(s)?;
        let mut next = WordComb::zero();
        for (w, c) in &acc {
            for (v, e) in &ds {
                next.add_term(
                    tensor_word(merge(&w.factors[0], &v.factors[0]), merge(&w.factors[1], &v.factors[1])),
                    c * e,
                );
            }
        }
        acc = next;
    }
    Ok(acc)
}

fn two_factors(w: &Word) -> (&[Symbol], &[Symbol]) {
    assert_eq!(w.factors.len(), 2, "coproduct terms have two factors");
    (&w.factors[0], &w.factors[1])
}

/// `(Delta (x) id) Delta - (id (x) Delta) Delta` applied to a combination of
/// two-factor tensor words.
pub fn coassociativity_defect(delta_x: &WordComb) -> Result<WordComb> {
    let mut out = WordComb::zero();
    for (w, c) in delta_x {
        let (l, r) = two_factors(w);
        for (v, e) in &coproduct_of_monomial(l)? {
            let word = Word {
                joint: Joint::Tensor,
                factors: vec![v.factors[0].clone(), v.factors[1].clone(), r.to_vec()],
            };
            out.add_term(word, c * e);
        }
        for (v, e) in &coproduct_of_monomial(r)? {
            let word = Word {
                joint: Joint::Tensor,
                factors: vec![l.to_vec(), v.factors[0].clone(), v.factors[1].clone()],
            };
            out.add_term(word, -(c * e));
        }
    }
    Ok(out)
}

/// Keeps the terms whose two factors are single generators and maps
/// `a (x) b` to `a ^ b`.
pub fn coproduct_mod_products(delta_x: &WordComb) -> WordComb {
    let mut out = WordComb::zero();
    for (w, c) in delta_x {
        let (l, r) = two_factors(w);
        if l.len() == 1 && r.len() == 1 {
            if let Some((s, wedge)) = Word::wedge(vec![l[0].clone(), r[0].clone()]) {
                out.add_term(wedge, c * Q::from_integer(s.into()));
            }
        }
    }
    out
}

/// Index sequences whose term contributes a product-free part up to the
/// weight bound.
pub fn surviving_sequences(d: usize, weight_bound: u32) -> Result<Vec<IndexSequence>> {
    let args = super::standard_atoms(d);
    let slots = TForm::identity(d);
    let mut out = Vec::new();
    for seq in index_sequences(d) {
        let p = coproduct_term(&args, &slots, &seq)?.expand(weight_bound.saturating_sub(d as u32))?;
        if p.iter().any(|(_, c)| !coproduct_mod_products(c).is_zero()) {
            out.push(seq);
        }
    }
    Ok(out)
}

/// Compares the product-free part of the coproduct with the cobracket on the
/// standard series of depth `d`, for every weight up to `weight_bound`.
pub fn mod_products_matches_delta(d: usize, weight_bound: u32) -> Result<Option<String>> {
    let args = super::standard_atoms(d);
    let cop = coproduct(&args, weight_bound)?;
    let reduced = cop.map_coeffs(|c| Ok::<_, crate::Error>(coproduct_mod_products(c)))?;
    let del = super::delta_series(&args, weight_bound, Cobracket::Delta)?;
    Ok(super::first_difference(&reduced, &del))
}

/// The depth-2 coproduct written out term by term, independent of the
/// index-sequence enumeration.
pub fn depth2_written_out(x1: &Arg, x2: &Arg) -> Result<Expr> {
    let (t1, t2) = (TForm::var(0), TForm::var(1));
    let x12 = x1.mul(x2).unwrap_or_else(Arg::one);
    let pow = |a: &Arg, f: TForm| Expr::Exp {
        log: log_comb(a),
        form: f,
    };
    let li = |args: Vec<Arg>, slots: Vec<TForm>| Expr::series(args, slots);
    let terms = vec![
        Expr::tensor(
            li(vec![x1.clone(), x2.clone()], vec![t1, t2]),
            Expr::times(pow(x1, t1), pow(x2, t2)),
        ),
        Expr::tensor(
            li(vec![x12.clone()], vec![t1]),
            Expr::times(pow(&x12, t1), li(vec![x2.clone()], vec![t2 - t1])),
        ),
        Expr::tensor(
            li(vec![x12.clone()], vec![t2]),
            Expr::times(pow(&x12, t2), li(vec![x1.inverse()], vec![t2 - t1])),
        )
        .neg(),
        Expr::tensor(
            li(vec![x2.clone()], vec![t2]),
            Expr::times(li(vec![x1.clone()], vec![t1]), pow(x2, t2)),
        ),
        Expr::tensor(Expr::one(), li(vec![x1.clone(), x2.clone()], vec![t1, t2])),
    ];
    Ok(Expr::Sum(terms))
}

/// Compares the enumerated depth-2 coproduct with [`depth2_written_out`].
pub fn verify_depth2_written_out(weight_bound: u32) -> Result<CheckReport> {
    let args = super::standard_atoms(2);
    let enumerated = coproduct(&args, weight_bound)?;
    let written = depth2_written_out(&args[0], &args[1])?.expand(weight_bound.saturating_sub(2))?;
    let name = "coproduct depth 2 term by term";
    Ok(match super::first_difference(&enumerated, &written) {
        None => CheckReport::pass(name, enumerated.len()),
        Some(d) => CheckReport::fail(name, enumerated.len(), d),
    })
}

fn standard_symbols(max_depth: usize, max_weight: u32) -> Vec<Symbol> {
    let mut out = Vec::new();
    for d in 1..=max_depth {
        let args = super::standard_atoms(d);
        for w in d as u32..=max_weight {
            for c in crate::symbolic::expr::compositions(w - d as u32, d) {
                out.push(Symbol::new(args.clone(), c.iter().map(|n| n + 1).collect()));
            }
        }
    }
    out
}

/// Coassociativity on every standard symbol of bounded depth and weight.
pub fn verify_coassociativity(max_depth: usize, max_weight: u32) -> Result<CheckReport> {
    let syms = standard_symbols(max_depth, max_weight);
    let name = format!("coassociativity, depth <= {max_depth}, weight <= {max_weight}");
    for s in &syms {
        let defect = coassociativity_defect(&coproduct_of_symbol(s)?)?;
        if !defect.is_zero() {
            return Ok(CheckReport::fail(name, syms.len(), format!("{s}: defect {defect}")));
        }
    }
    Ok(CheckReport::pass(name, syms.len()))
}

/// The product-free part of the coproduct against the cobracket for every
/// depth up to `max_depth`.
pub fn verify_mod_products(max_depth: usize, weight_bound: u32) -> Result<CheckReport> {
    // `checked` counts depths; each compares whole series up to the bound
    let name = format!("coproduct modulo products equals cobracket, depth <= {max_depth}, weight <= {weight_bound}");
    for d in 1..=max_depth {
        if let Some(diff) = mod_products_matches_delta(d, weight_bound)? {
            return Ok(CheckReport::fail(name, d, format!("depth {d}: {diff}")));
        }
    }
    Ok(CheckReport::pass(name, max_depth))
}
