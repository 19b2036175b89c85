//! The inversion map `inv`, symbols with infinite entries, the term-wise
//! operation `INV`, and exact checks of the inversion identities.
//!
//! `inv` is defined on series by `inv[x|t] = [x|t] + [x]_0` and, for
//! `d >= 2`,
//!
//! ```text
//! inv[x|t] = -(-1)^d [x|t]
//!          + (-1)^d/t_1 ([x_2..x_d | t_2..t_d] - [x_2..x_d | t_2-t_1, .., t_d-t_1])
//!          - 1/t_d (inv[x_1..x_{d-1} | t_1..t_{d-1}]
//!                   - inv[x_1..x_{d-1} | t_1-t_d, .., t_{d-1}-t_d])
//! ```

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::coalgebra::{delta_linear, delta_part, first_difference, standard_atoms, Cobracket};
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::symbolic::expr::{coefficient_at_index, log_comb};
use crate::symbolic::symbol::{wedge_combs, words_to_symbols};
use crate::symbolic::{
    find_violation, Arg, Expr, LinComb, Symbol, SymbolComb, TForm, TPoly, Word, WordComb,
};
use crate::Q;

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `inv[args | slots]` as a series expression.
pub fn inv_expr(args: &[Arg], slots: &[TForm]) -> Expr {
    let d = args.len();
    assert!(d >= 1 && d == slots.len());
    if d == 1 {
        return Expr::Sum(vec![
            Expr::series(args.to_vec(), slots.to_vec()),
            Expr::log(&args[0]),
        ]);
    }
    let s = sign(d);
    let (l1, ld) = (slots[0], slots[d - 1]);
    let a = Expr::series(args[1..].to_vec(), slots[1..].to_vec());
    let b = Expr::series(
        args[1..].to_vec(),
        slots[1..].iter().map(|&l| l - l1).collect(),
    );
    let head = &args[..d - 1];
    let c = inv_expr(head, &slots[..d - 1]);
    let dd = inv_expr(
        head,
        &slots[..d - 1].iter().map(|&l| l - ld).collect::<Vec<_>>(),
    );
    Expr::Sum(vec![
        Expr::series(args.to_vec(), slots.to_vec()).scale_int(-s),
        Expr::divided_difference(a, b, l1).scale_int(s),
        Expr::divided_difference(dd, c, ld),
    ])
}

/// `[args | slots]^-1 = [args_d^-1, .., args_1^-1 | -slots_d, .., -slots_1]`.
pub fn inverse_series(args: &[Arg], slots: &[TForm]) -> Expr {
    Expr::series(
        args.iter().rev().map(Arg::inverse).collect(),
        slots.iter().rev().map(|&l| -l).collect(),
    )
}

type InvMemo = RwLock<HashMap<(Vec<Arg>, u32), Arc<TPoly<Word>>>>;

fn inv_memo() -> &'static InvMemo {
    static MEMO: OnceLock<InvMemo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Degree-`deg` component of `inv[args | t1..td]`; memoized.
fn inv_component(args: &[Arg], deg: u32) -> Result<Arc<TPoly<Word>>> {
    let key = (args.to_vec(), deg);
    if let Some(v) = inv_memo().read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = Arc::new(inv_expr(args, &TForm::identity(args.len())).component(deg)?);
    inv_memo().write().unwrap().entry(key).or_insert(v.clone());
    Ok(v)
}

/// `inv[args]_index`, the coefficient of `t^(index - 1)` in `inv[args | t]`.
pub fn inv_coefficient(args: &[Arg], index: &[u32]) -> Result<SymbolComb> {
    let deg = index.iter().map(|n| n - 1).sum();
    let comp = inv_component(args, deg)?;
    Ok(words_to_symbols(&coefficient_at_index(&comp, index)))
}

/// Rewrites a symbol with infinite entries:
/// `[x_1..x_d]_{n_1..n_d} = (-1)^d (-1)^(n_1+..+n_d) inv[x_d^-1, .., x_1^-1]_{n_d..n_1}`.
///
/// The index is reversed together with the tuple so that `inv` is read at
/// the multi-index matching each entry. Infinite entries invert to zero,
/// whose symbols vanish, so the result has finite entries only.
pub fn infinity_reduce(sym: &Symbol) -> Result<SymbolComb> {
    if sym.weight() <= 1 {
        return Err(Error::UndefinedInfinity(sym.to_string()));
    }
    if let Some(v) = find_violation(&sym.args) {
        return Err(Error::inadmissible(&sym.args, v));
    }
    let d = sym.depth();
    let inverted: Vec<Arg> = sym.args.iter().rev().map(Arg::inverse).collect();
    let index: Vec<u32> = sym.index.iter().rev().copied().collect();
    let total: u32 = sym.index.iter().sum();
    let s = sign(d + total as usize);
    Ok(inv_coefficient(&inverted, &index)?.scaled(&Q::from_integer(s.into())))
}

/// The operation `INV` on one symbol: regular symbols are fixed, an
/// inverted symbol `X^-1` is replaced by `inv(X)` read at the matching
/// multi-index, and mixed symbols are an error.
pub fn inv_term(sym: &Symbol) -> Result<SymbolComb> {
    if sym.is_log() {
        return match &sym.args[0] {
            Arg::Infinity => Err(Error::UndefinedInfinity(sym.to_string())),
            a => Ok(log_comb(a)),
        };
    }
    if sym.is_regular() {
        return Ok(LinComb::single(sym.clone()));
    }
    if !sym.is_inverted() {
        return Err(Error::MixedTerm(sym.to_string()));
    }
    // sym = [w_1..w_k]_{m_1..m_k} is X^-1 for X = [w_k^-1..w_1^-1 | ..]
    // and its coefficient of t^(m-1) carries the sign (-1)^(sum m - k).
    let k = sym.depth();
    let args: Vec<Arg> = sym.args.iter().rev().map(Arg::inverse).collect();
    let index: Vec<u32> = sym.index.iter().rev().copied().collect();
    let total: u32 = sym.index.iter().sum();
    let s = sign(total as usize + k);
    Ok(inv_coefficient(&args, &index)?.scaled(&Q::from_integer(s.into())))
}

/// `INV` on a combination of symbols.
pub fn inv_terms(comb: &SymbolComb) -> Result<SymbolComb> {
    comb.flat_map(inv_term)
}

/// `INV` on wedge words, applied to each component.
pub fn inv_wedges(w: &WordComb) -> Result<WordComb> {
    let mut out = WordComb::zero();
    for (word, c) in w {
        let comps = word
            .wedge_components()
            .ok_or_else(|| Error::Domain(format!("{word} is not a wedge of symbols")))?;
        let mut acc = WordComb::single(Word {
            joint: crate::symbolic::Joint::Wedge,
            factors: Vec::new(),
        });
        for s in comps {
            let image = crate::symbolic::symbol::symbols_to_words(&inv_term(s)?);
            acc = wedge_combs(&acc, &image);
        }
        out.add_scaled(&acc, c);
    }
    Ok(out)
}

fn inv_poly(p: &TPoly<Word>) -> Result<TPoly<Word>> {
    p.map_coeffs(inv_wedges)
}

/// Both sides of the identity
/// `INV(delta(X^-1) + (-1)^d delta(X)) = INV delta((-1)^d/t_1 (A - B) - 1/t_d (C^-1 - D^-1))`
/// at `t`-degree `deg`, where `A = [x_2..x_d | t_2..t_d]`,
/// `B = [x_2..x_d | t_2-t_1, ..]`, `C = [x_1..x_{d-1} | t_1..t_{d-1}]` and
/// `D = [x_1..x_{d-1} | t_1-t_d, ..]`.
pub fn inversion_claim_sides(d: usize, deg: u32) -> Result<(TPoly<Word>, TPoly<Word>)> {
    let args = standard_atoms(d);
    let slots = TForm::identity(d);
    let s = sign(d);
    let lhs_series = Expr::Sum(vec![
        inverse_series(&args, &slots),
        Expr::series(args.clone(), slots.clone()).scale_int(s),
    ]);
    let lhs = inv_poly(&delta_linear(&lhs_series, Cobracket::Delta)?.component(deg)?)?;

    let (t1, td) = (slots[0], slots[d - 1]);
    let a = Expr::series(args[1..].to_vec(), slots[1..].to_vec());
    let b = Expr::series(args[1..].to_vec(), slots[1..].iter().map(|&l| l - t1).collect());
    let head = &args[..d - 1];
    let c_inv = inverse_series(head, &slots[..d - 1]);
    let d_inv = inverse_series(
        head,
        &slots[..d - 1].iter().map(|&l| l - td).collect::<Vec<_>>(),
    );
    let rhs_delta = if d == 1 {
        // A, B, C and D are all the constant 1
        Expr::zero()
    } else {
        let ab = delta_linear(&Expr::Sum(vec![a, b.neg()]), Cobracket::Delta)?;
        let dc = delta_linear(&Expr::Sum(vec![d_inv, c_inv.neg()]), Cobracket::Delta)?;
        Expr::Sum(vec![ab.div_form(t1).scale_int(s), dc.div_form(td)])
    };
    let rhs = inv_poly(&rhs_delta.component(deg)?)?;
    Ok((lhs, rhs))
}

/// Checks the inversion identity coefficient by coefficient for depth `d`
/// and all weights up to `max_weight`.
pub fn verify_inversion_claim(d: usize, max_weight: u32) -> Result<CheckReport> {
    let name = format!("inversion identity, depth {d}, weight <= {max_weight}");
    let mut checked = 0;
    for weight in d as u32..=max_weight {
        let (lhs, rhs) = inversion_claim_sides(d, weight - d as u32)?;
        // a weight where both sides vanish still counts as one comparison
        checked += lhs.len().max(rhs.len()).max(1);
        if let Some(diff) = first_difference(&lhs, &rhs) {
            return Ok(CheckReport::fail(name, checked, format!("weight {weight}: {diff}")));
        }
    }
    Ok(CheckReport::pass(name, checked))
}

/// Term families of `delta(X) + (-1)^d delta(X^-1)` in grouped form, each
/// paired with the corresponding cobracket parts.
///
/// Returned as `(label, grouped, from_parts)` expressions.
pub fn grouped_families(d: usize) -> Result<Vec<(&'static str, Expr, Expr)>> {
    let x = standard_atoms(d);
    let t = TForm::identity(d);
    let s = sign(d);
    // Y_{r,s;u} with 1-based inclusive r..=s; u = 0 means no shift
    let y = |r: usize, e: usize, u: usize| -> (Vec<Arg>, Vec<TForm>) {
        let shift = if u == 0 { TForm::ZERO } else { t[u - 1] };
        (
            x[r - 1..e].to_vec(),
            t[r - 1..e].iter().map(|&l| l - shift).collect(),
        )
    };
    let ser = |(a, l): (Vec<Arg>, Vec<TForm>)| Expr::series(a, l);
    let inv = |(a, l): (Vec<Arg>, Vec<TForm>)| inverse_series(&a, &l);
    let xinv_args: Vec<Arg> = x.iter().rev().map(Arg::inverse).collect();
    let xinv_slots: Vec<TForm> = t.iter().rev().map(|&l| -l).collect();
    let part = |i: u8, args: &[Arg], slots: &[TForm]| delta_part(i, args, slots, Cobracket::Delta);
    let both = |i: u8, j: u8| -> Result<Expr> {
        Ok(Expr::Sum(vec![
            part(i, &x, &t)?,
            part(j, &xinv_args, &xinv_slots)?.scale_int(s),
        ]))
    };

    let logs = Expr::Sum(
        x.iter()
            .zip(&t)
            .map(|(a, &l)| Expr::log(a).mul_form(l))
            .collect(),
    );
    let line1 = Expr::wedge(
        Expr::Sum(vec![ser(y(1, d, 0)), inv(y(1, d, 0)).scale_int(s)]),
        logs,
    );

    let mut line23 = Vec::new();
    for p in 2..=d {
        line23.push(
            Expr::wedge(
                Expr::Sum(vec![ser(y(p, d, 0)), inv(y(p, d, 0)).scale_int(sign(d - p + 1))]),
                inv(y(1, p - 1, 0)),
            )
            .scale_int(sign(p)),
        );
        line23.push(Expr::wedge(
            ser(y(p, d, 0)),
            Expr::Sum(vec![ser(y(1, p - 1, 0)), inv(y(1, p - 1, 0)).scale_int(sign(p - 1))]),
        ));
    }

    let mut line4 = Vec::new();
    let mut line5 = Vec::new();
    for p in 1..d {
        for q in p + 1..=d {
            let contracted = crate::coalgebra::contract(&x, p, q)?;
            let mut yslots = t[..p].to_vec();
            yslots.extend_from_slice(&t[q..]);
            let mut zslots = t[..p - 1].to_vec();
            zslots.extend_from_slice(&t[q - 1..]);
            let e = sign(d - q + p);
            line4.push(Expr::wedge(
                Expr::Sum(vec![
                    Expr::series(contracted.clone(), yslots.clone()),
                    inverse_series(&contracted, &yslots).scale_int(e),
                ]),
                ser(y(p + 1, q, p)),
            ));
            line5.push(
                Expr::wedge(
                    Expr::Sum(vec![
                        Expr::series(contracted.clone(), zslots.clone()),
                        inverse_series(&contracted, &zslots).scale_int(e),
                    ]),
                    inv(y(p, q - 1, q)),
                )
                .scale_int(sign(q - p)),
            );
        }
    }

    Ok(vec![
        ("delta1 terms", line1, both(1, 1)?),
        ("delta2 terms", Expr::Sum(line23), both(2, 2)?),
        ("delta3(X) with delta4(X^-1)", Expr::Sum(line4), both(3, 4)?),
        ("delta4(X) with delta3(X^-1)", Expr::Sum(line5), both(4, 3)?),
    ])
}

/// Checks the grouped form family by family and, as a whole, against
/// `delta(X) + (-1)^d delta(X^-1)`.
pub fn verify_grouped_form(d: usize, max_weight: u32) -> Result<CheckReport> {
    let name = format!("grouped form of delta(X) + (-1)^d delta(X^-1), depth {d}");
    let families = grouped_families(d)?;
    let x = standard_atoms(d);
    let t = TForm::identity(d);
    let total = delta_linear(
        &Expr::Sum(vec![
            Expr::series(x.clone(), t.clone()),
            inverse_series(&x, &t).scale_int(sign(d)),
        ]),
        Cobracket::Delta,
    )?;
    let grouped_total = Expr::Sum(families.iter().map(|f| f.1.clone()).collect());
    let mut checked = 0;
    for deg in 0..=max_weight.saturating_sub(d as u32) {
        for (label, grouped, parts) in &families {
            let (g, p) = (grouped.component(deg)?, parts.component(deg)?);
            checked += g.len();
            if let Some(diff) = first_difference(&g, &p) {
                return Ok(CheckReport::fail(name, checked, format!("{label}, degree {deg}: {diff}")));
            }
        }
        if let Some(diff) = first_difference(&grouped_total.component(deg)?, &total.component(deg)?) {
            return Ok(CheckReport::fail(name, checked, format!("total, degree {deg}: {diff}")));
        }
    }
    Ok(CheckReport::pass(name, checked))
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// The depth-2 coefficient identity
/// `[x1,x2]_{n1,n2} + (-1)^(n1+n2) [x2^-1,x1^-1]_{n2,n1}
///  + (-1)^n1 C(n-1, n2-1) [x2]_n + (-1)^n1 C(n-1, n1-1) [x1^-1]_n`
/// after applying `INV`, which must vanish identically.
pub fn invdept2_residual(n1: u32, n2: u32) -> Result<SymbolComb> {
    let x1 = Arg::atom("x1");
    let x2 = Arg::atom("x2");
    let n = n1 + n2;
    let q = |v: BigInt| Q::from_integer(v);
    let mut e = SymbolComb::zero();
    e.add_term(Symbol::new(vec![x1.clone(), x2.clone()], vec![n1, n2]), Q::one());
    e.add_term(
        Symbol::new(vec![x2.inverse(), x1.inverse()], vec![n2, n1]),
        q(sign(n as usize).into()),
    );
    e.add_term(
        Symbol::depth1(x2, n),
        q(BigInt::from(sign(n1 as usize)) * binomial(n - 1, n2 - 1)),
    );
    e.add_term(
        Symbol::depth1(x1.inverse(), n),
        q(BigInt::from(sign(n1 as usize)) * binomial(n - 1, n1 - 1)),
    );
    inv_terms(&e)
}

/// Closed forms obtained from the definition of infinite entries:
/// `[x1, inf]_{n1,n2} = (-1)^n2 C(n1+n2-1, n1-1) [x1]_{n1+n2}` and
/// `[inf, x2]_{n1,n2} = -(-1)^n1 C(n1+n2-1, n2-1) [x2]_{n1+n2}`, after the
/// depth-1 inversion `[x^-1]_n = (-1)^(n+1) [x]_n`.
pub fn infinity_closed_form(left_infinite: bool, n1: u32, n2: u32) -> SymbolComb {
    let n = n1 + n2;
    let (arg, c) = if left_infinite {
        (
            Arg::atom("x2"),
            -BigInt::from(sign(n1 as usize)) * binomial(n - 1, n2 - 1),
        )
    } else {
        (
            Arg::atom("x1"),
            BigInt::from(sign(n2 as usize)) * binomial(n - 1, n1 - 1),
        )
    };
    LinComb::term(Symbol::depth1(arg, n), Q::from_integer(c))
}

/// The same coefficients with the binomials `C(n1+n2, .)` shown in the
/// source display, for comparison in reports.
pub fn infinity_displayed_form(left_infinite: bool, n1: u32, n2: u32) -> SymbolComb {
    let n = n1 + n2;
    let (arg, c) = if left_infinite {
        (Arg::atom("x2"), -BigInt::from(sign(n1 as usize)) * binomial(n, n2 - 1))
    } else {
        (Arg::atom("x1"), BigInt::from(sign(n2 as usize)) * binomial(n, n1 - 1))
    };
    LinComb::term(Symbol::depth1(arg, n), Q::from_integer(c))
}

/// `[x1, inf]` or `[inf, x2]` reduced through the definition, with the
/// remaining inverted depth-1 symbol rewritten by depth-1 inversion.
pub fn infinity_derived_form(left_infinite: bool, n1: u32, n2: u32) -> Result<SymbolComb> {
    let args = if left_infinite {
        vec![Arg::Infinity, Arg::atom("x2")]
    } else {
        vec![Arg::atom("x1"), Arg::Infinity]
    };
    let raw = infinity_reduce(&Symbol::new(args, vec![n1, n2]))?;
    inv_terms(&raw)
}

/// Compares the derived `[x1,inf]` / `[inf,x2]` reductions with the closed
/// forms above and with the displayed binomials, for weights up to
/// `max_weight`. Passes when the derivation matches the closed form; any
/// disagreement with the display is listed in the detail.
pub fn verify_infinity_reductions(max_weight: u32) -> Result<CheckReport> {
    let name = format!("[x1,inf] and [inf,x2] reductions, weight <= {max_weight}");
    let mut checked = 0;
    let mut display_mismatches = Vec::new();
    for n in 2..=max_weight {
        for n1 in 1..n {
            let n2 = n - n1;
            for left in [false, true] {
                checked += 1;
                let derived = infinity_derived_form(left, n1, n2)?;
                let closed = infinity_closed_form(left, n1, n2);
                if derived != closed {
                    return Ok(CheckReport::fail(
                        name,
                        checked,
                        format!("({n1},{n2}), infinite entry {}: derived {derived}, closed form {closed}",
                            if left { "first" } else { "second" }),
                    ));
                }
                if derived != infinity_displayed_form(left, n1, n2) {
                    display_mismatches.push(format!(
                        "{}_{{{n1},{n2}}} = {derived}",
                        if left { "[inf,x2]" } else { "[x1,inf]" }
                    ));
                }
            }
        }
    }
    let mut report = CheckReport::pass(name, checked);
    if !display_mismatches.is_empty() {
        report = report.with_detail(format!(
            "derived binomials are C(n1+n2-1, .), not C(n1+n2, .); {} of {checked} cases differ from the display, e.g. {}",
            display_mismatches.len(),
            display_mismatches[0]
        ));
    }
    Ok(report)
}

/// Depth-2 residuals of [`invdept2_residual`] for all weights up to
/// `max_weight`.
pub fn verify_invdept2(max_weight: u32) -> Result<CheckReport> {
    let name = format!("depth-2 inversion coefficients, weight <= {max_weight}");
    let mut checked = 0;
    for n in 2..=max_weight {
        for n1 in 1..n {
            checked += 1;
            let r = invdept2_residual(n1, n - n1)?;
            if !r.is_zero() {
                return Ok(CheckReport::fail(name, checked, format!("({n1},{}): {r}", n - n1)));
            }
        }
    }
    Ok(CheckReport::pass(name, checked))
}

/// The coefficients of `inv[x|t]` in depth 1: `[x]_n` for `n > 1` and
/// `[x]_1 + [x]_0` for `n = 1`.
pub fn depth1_inv(n: u32) -> Result<SymbolComb> {
    inv_coefficient(&[Arg::atom("x")], &[n])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Arg {
        Arg::atom("x")
    }

    #[test]
    fn depth_one_inv() {
        let mut want = SymbolComb::single(Symbol::depth1(x(), 1));
        want.add_term(Symbol::log(x()), Q::one());
        assert_eq!(depth1_inv(1).unwrap(), want);
        for n in 2..=5 {
            assert_eq!(depth1_inv(n).unwrap(), LinComb::single(Symbol::depth1(x(), n)));
        }
    }

    #[test]
    fn inv_divisions_cancel() {
        for d in 1..=3 {
            let args = standard_atoms(d);
            assert!(inv_expr(&args, &TForm::identity(d)).expand(3).is_ok());
        }
    }

    #[test]
    fn infinity_depth_one() {
        for n in 2..=5 {
            let r = infinity_reduce(&Symbol::depth1(Arg::Infinity, n)).unwrap();
            assert!(r.is_zero());
        }
        assert!(matches!(
            infinity_reduce(&Symbol::depth1(Arg::Infinity, 1)),
            Err(Error::UndefinedInfinity(_))
        ));
    }

    #[test]
    fn infinity_output_is_finite() {
        let s = Symbol::new(vec![Arg::atom("x1"), Arg::Infinity, Arg::atom("x3")], vec![2, 1, 2]);
        let r = infinity_reduce(&s).unwrap();
        for (t, _) in &r {
            assert!(!t.contains_zero() && !t.contains_infinity());
        }
    }

    #[test]
    fn inv_on_terms() {
        // regular terms are fixed
        let s = Symbol::new(vec![Arg::atom("a"), Arg::atom("b")], vec![2, 1]);
        assert_eq!(inv_term(&s).unwrap(), LinComb::single(s));
        // [x^-1]_n -> (-1)^(n+1) [x]_n, and [x^-1]_1 -> [x]_1 + [x]_0
        for n in 2..=5 {
            let r = inv_term(&Symbol::depth1(x().inverse(), n)).unwrap();
            assert_eq!(
                r,
                LinComb::term(Symbol::depth1(x(), n), Q::from_integer(sign(n as usize + 1).into()))
            );
        }
        let mut want = SymbolComb::single(Symbol::depth1(x(), 1));
        want.add_term(Symbol::log(x()), Q::one());
        assert_eq!(inv_term(&Symbol::depth1(x().inverse(), 1)).unwrap(), want);
        // mixed terms are rejected
        let mixed = Symbol::new(vec![Arg::atom("a").inverse(), Arg::atom("b")], vec![1, 1]);
        assert!(matches!(inv_term(&mixed), Err(Error::MixedTerm(_))));
    }

    #[test]
    fn invdept2_small() {
        assert!(verify_invdept2(4).unwrap().passed);
    }

    #[test]
    fn infinity_closed_forms() {
        let r = verify_infinity_reductions(5).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn claim_low_depth() {
        for d in 1..=2 {
            let r = verify_inversion_claim(d, 4).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn grouped_form_low_depth() {
        for d in 1..=2 {
            let r = verify_grouped_form(d, 4).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }
}
