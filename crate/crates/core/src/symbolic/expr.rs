//! Generating-series expressions and their coefficient extraction.
//!
//! An [`Expr`] denotes a formal power series in `t1, t2, ...` whose
//! coefficients are linear combinations of [`Word`]s. Leaves are generating
//! series `[x1..xd | L1..Ld] = sum [x]_n * prod L_i^(n_i - 1)` with linear
//! forms `L_i`; inner nodes are sums, scalings, multiplication or exact
//! division by a linear form, and wedge/tensor/commutative products.
//! Evaluation extracts one homogeneous `t`-degree at a time.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use super::arg::{find_violation, Arg};
use super::lincomb::LinComb;
use super::poly::{spoly_form_pow, spoly_from_form, Monomial, SPoly, TPoly};
use super::symbol::{Joint, Symbol, SymbolComb, Word, WordComb};
use super::tform::TForm;
use crate::error::{Error, Result};
use crate::Q;

/// How two factors are multiplied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProdKind {
    /// Alternating product of single symbols.
    Wedge,
    /// Ordered tensor product.
    Tensor,
    /// Commutative product inside one tensor factor.
    Commutative,
}

#[derive(Clone, Debug)]
pub enum Expr {
    /// The generating series `[args | slots]`.
    Series { args: Vec<Arg>, slots: Vec<TForm> },
    /// A constant (degree 0) value.
    Const(WordComb),
    /// `exp(form * log)`; `log` is a combination of weight-1 symbols.
    Exp { log: SymbolComb, form: TForm },
    Scale(Q, Box<Expr>),
    MulForm(TForm, Box<Expr>),
    /// Exact division by a linear form; the numerator must vanish on it.
    DivForm(TForm, Box<Expr>),
    Sum(Vec<Expr>),
    Prod(ProdKind, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn series(args: Vec<Arg>, slots: Vec<TForm>) -> Expr {
        assert_eq!(args.len(), slots.len());
        if args.is_empty() {
            return Expr::one();
        }
        Expr::Series { args, slots }
    }

    /// The series `[args | t1..td]`.
    pub fn standard(args: Vec<Arg>) -> Expr {
        let d = args.len();
        Expr::series(args, TForm::identity(d))
    }

    /// The constant `1` (empty monomial).
    pub fn one() -> Expr {
        Expr::Const(LinComb::single(Word::one()))
    }

    pub fn zero() -> Expr {
        Expr::Sum(Vec::new())
    }

    pub fn symbol(s: Symbol) -> Expr {
        Expr::Const(LinComb::single(Word::symbol(s)))
    }

    /// The constant `[x]_0`, decomposed over atoms.
    pub fn log(arg: &Arg) -> Expr {
        Expr::Const(super::symbol::symbols_to_words(&log_comb(arg)))
    }

    pub fn scale(self, c: Q) -> Expr {
        Expr::Scale(c, Box::new(self))
    }

    pub fn scale_int(self, c: i64) -> Expr {
        self.scale(Q::from_integer(BigInt::from(c)))
    }

    pub fn neg(self) -> Expr {
        self.scale_int(-1)
    }

    pub fn mul_form(self, f: TForm) -> Expr {
        Expr::MulForm(f, Box::new(self))
    }

    pub fn div_form(self, f: TForm) -> Expr {
        Expr::DivForm(f, Box::new(self))
    }

    pub fn wedge(a: Expr, b: Expr) -> Expr {
        Expr::Prod(ProdKind::Wedge, Box::new(a), Box::new(b))
    }

    pub fn tensor(a: Expr, b: Expr) -> Expr {
        Expr::Prod(ProdKind::Tensor, Box::new(a), Box::new(b))
    }

    pub fn times(a: Expr, b: Expr) -> Expr {
        Expr::Prod(ProdKind::Commutative, Box::new(a), Box::new(b))
    }

    /// `(a - b) / form`.
    pub fn divided_difference(a: Expr, b: Expr, form: TForm) -> Expr {
        Expr::Sum(vec![a, b.neg()]).div_form(form)
    }

    /// Homogeneous component of `t`-degree `deg`.
    pub fn component(&self, deg: u32) -> Result<TPoly<Word>> {
        Evaluator::default().eval(self, deg)
    }

    /// All components of degree `0..=max_deg`, summed.
    pub fn expand(&self, max_deg: u32) -> Result<TPoly<Word>> {
        let mut ev = Evaluator::default();
        let mut out = TPoly::zero();
        for d in 0..=max_deg {
            out.add_assign(&ev.eval(self, d)?);
        }
        Ok(out)
    }

    /// Applies `f` to every series leaf, keeping the linear structure.
    /// Fails on product nodes, where the map would not be linear.
    pub fn map_series<F>(&self, f: &mut F) -> Result<Expr>
    where
        F: FnMut(&[Arg], &[TForm]) -> Result<Expr>,
    {
        Ok(match self {
            Expr::Series { args, slots } => f(args, slots)?,
            Expr::Const(_) | Expr::Exp { .. } => {
                return Err(Error::Domain(
                    "leaf map applies only to linear series expressions".into(),
                ))
            }
            Expr::Scale(c, e) => Expr::Scale(c.clone(), Box::new(e.map_series(f)?)),
            Expr::MulForm(l, e) => Expr::MulForm(*l, Box::new(e.map_series(f)?)),
            Expr::DivForm(l, e) => Expr::DivForm(*l, Box::new(e.map_series(f)?)),
            Expr::Sum(v) => Expr::Sum(v.iter().map(|e| e.map_series(f)).collect::<Result<_>>()?),
            Expr::Prod(..) => {
                return Err(Error::Domain(
                    "leaf map applies only to linear series expressions".into(),
                ))
            }
        })
    }
}

/// `[x]_0` for a formal argument, as a combination of atom logarithms.
/// `log 1` and `log 0` vanish; `log inf` has no meaning and panics.
pub fn log_comb(arg: &Arg) -> SymbolComb {
    match arg {
        Arg::Zero => LinComb::zero(),
        Arg::Infinity => panic!("[inf]_0 is undefined"),
        Arg::Group(v) => v
            .iter()
            .map(|(a, e)| {
                (
                    Symbol::log(Arg::Group(vec![(a.clone(), 1)])),
                    Q::from_integer(BigInt::from(*e)),
                )
            })
            .collect(),
    }
}

/// Normalizes a formal symbol: admissibility is checked, symbols with a
/// zero argument vanish, symbols with an infinite argument are rewritten
/// through the inversion map and log symbols are split over atoms.
pub fn resolve_symbol(sym: &Symbol) -> Result<SymbolComb> {
    if sym.is_log() {
        return match &sym.args[0] {
            Arg::Infinity => Err(Error::UndefinedInfinity(sym.to_string())),
            a => Ok(log_comb(a)),
        };
    }
    if let Some(v) = find_violation(&sym.args) {
        return Err(Error::inadmissible(&sym.args, v));
    }
    if sym.contains_zero() {
        return Ok(LinComb::zero());
    }
    if sym.contains_infinity() {
        return crate::inversion::infinity_reduce(sym);
    }
    Ok(LinComb::single(sym.clone()))
}

/// Compositions of `total` into `parts` nonnegative integers.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0; parts];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
    }
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

fn factorial(n: u32) -> Q {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= k;
    }
    Q::from_integer(f)
}

fn combine(kind: ProdKind, a: &Word, b: &Word) -> Option<(i32, Word)> {
    match kind {
        ProdKind::Wedge => {
            let mut comps = Vec::with_capacity(a.factors.len() + b.factors.len());
            for f in a.factors.iter().chain(&b.factors) {
                assert_eq!(f.len(), 1, "wedge factors must be single symbols");
                comps.push(f[0].clone());
            }
            Word::wedge(comps)
        }
        ProdKind::Tensor => {
            let mut factors = a.factors.clone();
            factors.extend(b.factors.iter().cloned());
            Some((
                1,
                Word {
                    joint: if factors.len() > 1 { Joint::Tensor } else { Joint::Wedge },
                    factors,
                },
            ))
        }
        ProdKind::Commutative => {
            assert!(
                a.factors.len() == 1 && b.factors.len() == 1,
                "commutative products act inside a single factor"
            );
            let mut merged = a.factors[0].clone();
            merged.extend(b.factors[0].iter().cloned());
            merged.sort();
            Some((
                1,
                Word {
                    joint: Joint::Wedge,
                    factors: vec![merged],
                },
            ))
        }
    }
}

/// Memoizes components per node for a single evaluation pass.
#[derive(Default)]
struct Evaluator {
    cache: HashMap<(usize, u32), TPoly<Word>>,
    powers: HashMap<(TForm, u32), SPoly>,
}

impl Evaluator {
    fn pow(&mut self, form: &TForm, n: u32) -> SPoly {
        self.powers
            .entry((*form, n))
            .or_insert_with(|| spoly_form_pow(form, n))
            .clone()
    }

    fn eval(&mut self, e: &Expr, deg: u32) -> Result<TPoly<Word>> {
        let key = (e as *const Expr as usize, deg);
        if let Some(v) = self.cache.get(&key) {
            return Ok(v.clone());
        }
        let v = self.eval_uncached(e, deg)?;
        self.cache.insert(key, v.clone());
        Ok(v)
    }

    fn eval_uncached(&mut self, e: &Expr, deg: u32) -> Result<TPoly<Word>> {
        match e {
            Expr::Series { args, slots } => self.series(args, slots, deg),
            Expr::Const(c) => Ok(if deg == 0 {
                TPoly::constant(c.clone())
            } else {
                TPoly::zero()
            }),
            Expr::Exp { log, form } => {
                // (form * log)^deg / deg!
                let mut power: WordComb = LinComb::single(Word::one());
                for _ in 0..deg {
                    let mut next = WordComb::zero();
                    for (w, c) in &power {
                        for (s, cs) in log {
                            let (_, merged) = combine(
                                ProdKind::Commutative,
                                w,
                                &Word::symbol(s.clone()),
                            )
                            .expect("commutative product never vanishes");
                            next.add_term(merged, c * cs);
                        }
                    }
                    power = next;
                }
                let p = self.pow(form, deg);
                Ok(TPoly::constant(power)
                    .mul_spoly(&p)
                    .scaled(&(Q::one() / factorial(deg))))
            }
            Expr::Scale(c, inner) => Ok(self.eval(inner, deg)?.scaled(c)),
            Expr::MulForm(f, inner) => {
                if deg == 0 || f.is_zero() {
                    return Ok(TPoly::zero());
                }
                Ok(self.eval(inner, deg - 1)?.mul_spoly(&spoly_from_form(f)))
            }
            Expr::DivForm(f, inner) => {
                let num = self.eval(inner, deg + 1)?;
                Ok(num.div_form(f)?)
            }
            Expr::Sum(v) => {
                let mut out = TPoly::zero();
                for x in v {
                    out.add_assign(&self.eval(x, deg)?);
                }
                Ok(out)
            }
            Expr::Prod(kind, a, b) => {
                let mut out = TPoly::zero();
                for da in 0..=deg {
                    let pa = self.eval(a, da)?;
                    if pa.is_zero() {
                        continue;
                    }
                    let pb = self.eval(b, deg - da)?;
                    if pb.is_zero() {
                        continue;
                    }
                    out.add_assign(&pa.product(&pb, |x, y| combine(*kind, x, y)));
                }
                Ok(out)
            }
        }
    }

    fn series(&mut self, args: &[Arg], slots: &[TForm], deg: u32) -> Result<TPoly<Word>> {
        let mut out = TPoly::zero();
        for comp in compositions(deg, args.len()) {
            let index: Vec<u32> = comp.iter().map(|m| m + 1).collect();
            let sym = Symbol::new(args.to_vec(), index);
            let resolved = resolve_symbol(&sym)?;
            if resolved.is_zero() {
                continue;
            }
            let mut poly: SPoly = super::poly::spoly_one();
            for (form, &m) in slots.iter().zip(&comp) {
                if m > 0 {
                    poly = super::poly::spoly_mul(&poly, &self.pow(form, m));
                }
            }
            let words = super::symbol::symbols_to_words(&resolved);
            out.add_assign(&TPoly::constant(words).mul_spoly(&poly));
        }
        Ok(out)
    }
}

/// Coefficient of `t^(n-1)` in a polynomial, i.e. the part belonging to
/// the multi-index `n`.
pub fn coefficient_at_index(p: &TPoly<Word>, index: &[u32]) -> WordComb {
    p.coeff(&Monomial::for_index(index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::symbol::words_to_symbols;

    fn x() -> Arg {
        Arg::atom("x")
    }
    fn y() -> Arg {
        Arg::atom("y")
    }
    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn depth_one_series() {
        let e = Expr::standard(vec![x()]);
        let p = e.expand(2).unwrap();
        for n in 1..=3u32 {
            let c = words_to_symbols(&coefficient_at_index(&p, &[n]));
            assert_eq!(c, LinComb::single(Symbol::depth1(x(), n)));
        }
        assert_eq!(p.len(), 3);
    }

    /// `([y|t1] - [y|t2]) / (t1 - t2)`, checked against long division done
    /// by hand on the expanded series: the coefficient of `t1^a t2^b` is
    /// `[y]_{a+b+2}`.
    #[test]
    fn divided_difference_of_depth_one_series() {
        let a = Expr::series(vec![y()], vec![TForm::var(0)]);
        let b = Expr::series(vec![y()], vec![TForm::var(1)]);
        let e = Expr::divided_difference(a, b, TForm::var(0) - TForm::var(1));
        let p = e.expand(2).unwrap();
        let mut count = 0;
        for (m, c) in p.iter() {
            let i = m.degree() + 2;
            assert_eq!(words_to_symbols(c), LinComb::single(Symbol::depth1(y(), i)));
            count += 1;
        }
        // degrees 0, 1, 2 give 1 + 2 + 3 monomials
        assert_eq!(count, 6);
    }

    #[test]
    fn non_divisible_numerator_is_an_error() {
        let a = Expr::series(vec![y()], vec![TForm::var(0)]);
        let e = a.div_form(TForm::var(1));
        assert!(matches!(e.component(0), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn exp_series_coefficients() {
        // (xy)^t = 1 + t([x]_0 + [y]_0) + t^2 ([x]_0 + [y]_0)^2 / 2 + ...
        let e = Expr::Exp {
            log: log_comb(&x().mul(&y()).unwrap()),
            form: TForm::var(0),
        };
        let c2 = e.component(2).unwrap();
        let c = c2.coeff(&Monomial::from_exponents(&[2]));
        assert_eq!(c.len(), 3);
        let half = Q::new(1.into(), 2.into());
        let lx = Symbol::log(x());
        let ly = Symbol::log(y());
        let xx = Word { joint: Joint::Wedge, factors: vec![vec![lx.clone(), lx.clone()]] };
        let xy = Word { joint: Joint::Wedge, factors: vec![vec![lx, ly]] };
        assert_eq!(c.coeff(&xx), half);
        assert_eq!(c.coeff(&xy), q(1));
    }

    #[test]
    fn zero_argument_vanishes() {
        let e = Expr::standard(vec![x(), Arg::Zero]);
        assert!(e.expand(3).unwrap().is_zero());
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 3).len(), 10);
        assert_eq!(compositions(0, 2), vec![vec![0, 0]]);
    }

    #[test]
    fn truncation_is_consistent() {
        let e = Expr::standard(vec![x(), y()]);
        let big = e.expand(4).unwrap().truncated(2);
        assert_eq!(big, e.expand(2).unwrap());
    }
}
