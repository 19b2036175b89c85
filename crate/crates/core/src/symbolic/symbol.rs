//! Symbols `[x1,...,xd]_{n1,...,nd}`, the weight-1 logarithm symbols
//! `[x]_0`, and tensor/wedge words built from them.

use std::cmp::Ordering;
use std::fmt;

use super::arg::{self, Arg, Violation};
use super::lincomb::LinComb;
use crate::Q;

/// A symbol over argument type `A` (formal [`Arg`] by default).
///
/// The index vector holds positive integers, except for the logarithm
/// symbol `[x]_0` whose index is `[0]`. Both `[x]_0` and `[x]_1` have
/// weight 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Symbol<A = Arg> {
    pub args: Vec<A>,
    pub index: Vec<u32>,
}

impl<A> Symbol<A> {
    /// Builds a symbol without checking admissibility.
    ///
    /// Panics if lengths differ, the tuple is empty, or a zero index
    /// appears anywhere except in the depth-1 log symbol.
    pub fn new(args: Vec<A>, index: Vec<u32>) -> Self {
        assert_eq!(args.len(), index.len(), "argument/index length mismatch");
        assert!(!args.is_empty(), "symbols have depth >= 1");
        assert!(
            index.len() == 1 || index.iter().all(|&n| n > 0),
            "multi-index entries must be positive"
        );
        Symbol { args, index }
    }

    pub fn log(arg: A) -> Self {
        Symbol {
            args: vec![arg],
            index: vec![0],
        }
    }

    pub fn depth1(arg: A, n: u32) -> Self {
        Symbol {
            args: vec![arg],
            index: vec![n],
        }
    }

    pub fn is_log(&self) -> bool {
        self.index == [0]
    }

    pub fn weight(&self) -> u32 {
        if self.is_log() {
            1
        } else {
            self.index.iter().sum()
        }
    }

    pub fn depth(&self) -> usize {
        self.args.len()
    }

    /// Applies `f` to every argument.
    pub fn map_args<B, F: FnMut(&A) -> B>(&self, f: F) -> Symbol<B> {
        Symbol {
            args: self.args.iter().map(f).collect(),
            index: self.index.clone(),
        }
    }
}

impl Symbol<Arg> {
    /// Builds a formal symbol, rejecting inadmissible tuples.
    pub fn checked(args: Vec<Arg>, index: Vec<u32>) -> Result<Self, Violation> {
        if let Some(v) = arg::find_violation(&args) {
            return Err(v);
        }
        Ok(Symbol::new(args, index))
    }

    pub fn contains_zero(&self) -> bool {
        self.args.iter().any(Arg::is_zero)
    }

    pub fn contains_infinity(&self) -> bool {
        self.args.iter().any(Arg::is_infinity)
    }

    /// Every argument is a product of atoms with positive exponents.
    pub fn is_regular(&self) -> bool {
        self.args.iter().all(Arg::is_regular)
    }

    /// Every argument is a product of inverted atoms.
    pub fn is_inverted(&self) -> bool {
        self.args.iter().all(Arg::is_inverted)
    }
}

impl<A: Ord> Ord for Symbol<A> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.depth().cmp(&other.depth()))
            .then_with(|| self.index.cmp(&other.index))
            .then_with(|| self.args.cmp(&other.args))
    }
}

impl<A: Ord> PartialOrd for Symbol<A> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<A: fmt::Display> fmt::Display for Symbol<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(";")?;
        for (i, n) in self.index.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str("]")
    }
}

impl<A: fmt::Display> fmt::Debug for Symbol<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// How the factors of a [`Word`] are joined.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Joint {
    /// Alternating product; factors are single symbols in canonical order.
    Wedge,
    /// Ordered tensor product; each factor is a commutative monomial.
    Tensor,
}

/// A product of symbols. Each factor is a sorted multiset of symbols read as
/// a commutative monomial (empty means `1`); factors are joined by `Joint`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word<A = Arg> {
    pub joint: Joint,
    pub factors: Vec<Vec<Symbol<A>>>,
}

impl<A: Ord> Ord for Word<A> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.joint
            .cmp(&other.joint)
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl<A: Ord> PartialOrd for Word<A> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<A: Ord + Clone> Word<A> {
    /// The word holding one symbol.
    pub fn symbol(s: Symbol<A>) -> Self {
        Word {
            joint: Joint::Wedge,
            factors: vec![vec![s]],
        }
    }

    /// The empty monomial `1` (a single empty factor).
    pub fn one() -> Self {
        Word {
            joint: Joint::Wedge,
            factors: vec![Vec::new()],
        }
    }

    /// Canonical wedge of single symbols: components sorted in descending
    /// symbol order with the permutation sign. `None` when a component
    /// repeats.
    pub fn wedge(mut comps: Vec<Symbol<A>>) -> Option<(i32, Self)> {
        let mut sign = 1;
        // insertion sort, counting transpositions
        for i in 1..comps.len() {
            let mut j = i;
            while j > 0 && comps[j - 1] < comps[j] {
                comps.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if comps.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((
            sign,
            Word {
                joint: Joint::Wedge,
                factors: comps.into_iter().map(|s| vec![s]).collect(),
            },
        ))
    }

    /// The single symbol of a one-factor, one-symbol word.
    pub fn as_symbol(&self) -> Option<&Symbol<A>> {
        match self.factors.as_slice() {
            [f] if f.len() == 1 => Some(&f[0]),
            _ => None,
        }
    }

    /// Wedge components, when every factor is a single symbol.
    pub fn wedge_components(&self) -> Option<Vec<&Symbol<A>>> {
        self.factors
            .iter()
            .map(|f| if f.len() == 1 { Some(&f[0]) } else { None })
            .collect()
    }

    pub fn weight(&self) -> u32 {
        self.factors.iter().flatten().map(Symbol::weight).sum()
    }
}

impl<A: fmt::Display> fmt::Display for Word<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = match self.joint {
            Joint::Wedge => " ^ ",
            Joint::Tensor => " (x) ",
        };
        for (i, fac) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            if fac.is_empty() {
                f.write_str("1")?;
            }
            for (j, s) in fac.iter().enumerate() {
                if j > 0 {
                    f.write_str("*")?;
                }
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

impl<A: fmt::Display> fmt::Debug for Word<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A formal linear combination of symbols.
pub type SymbolComb<A = Arg> = LinComb<Symbol<A>>;

/// A linear combination of words; for degree-2/3 wedges this is an element
/// of the exterior square/cube.
pub type WordComb<A = Arg> = LinComb<Word<A>>;

/// Wraps every symbol of a combination as a one-symbol word.
pub fn symbols_to_words<A: Ord + Clone>(c: &SymbolComb<A>) -> WordComb<A> {
    c.map_keys(|s| Word::symbol(s.clone()))
}

/// Inverse of [`symbols_to_words`]; panics on non-symbol words.
pub fn words_to_symbols<A: Ord + Clone>(c: &WordComb<A>) -> SymbolComb<A> {
    c.map_keys(|w| w.as_symbol().expect("single-symbol word").clone())
}

/// Bilinear wedge of two combinations of wedge words.
pub fn wedge_combs<A: Ord + Clone>(a: &WordComb<A>, b: &WordComb<A>) -> WordComb<A> {
    let mut out = WordComb::zero();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut comps: Vec<Symbol<A>> = Vec::new();
            for f in wa.factors.iter().chain(&wb.factors) {
                assert_eq!(f.len(), 1, "wedge factors are single symbols");
                comps.push(f[0].clone());
            }
            if let Some((sign, w)) = Word::wedge(comps) {
                out.add_term(w, ca * cb * Q::from_integer(sign.into()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(name: &str, n: u32) -> Symbol {
        Symbol::depth1(Arg::atom(name), n)
    }

    #[test]
    fn weights() {
        assert_eq!(s("x", 0).weight(), 1);
        assert_eq!(s("x", 1).weight(), 1);
        let d2 = Symbol::new(vec![Arg::atom("x"), Arg::atom("y")], vec![2, 1]);
        assert_eq!((d2.weight(), d2.depth()), (3, 2));
        assert_eq!(d2.to_string(), "[x,y;2,1]");
    }

    #[test]
    fn wedge_is_alternating() {
        let (s1, w1) = Word::wedge(vec![s("x", 1), s("x", 0)]).unwrap();
        let (s2, w2) = Word::wedge(vec![s("x", 0), s("x", 1)]).unwrap();
        assert_eq!(w1, w2);
        assert_eq!(s1, -s2);
        assert_eq!(w1.to_string(), "[x;1] ^ [x;0]");
        assert!(Word::wedge(vec![s("x", 1), s("x", 1)]).is_none());
    }

    #[test]
    fn triple_wedge_sign() {
        let (sa, wa) = Word::wedge(vec![s("a", 1), s("b", 1), s("c", 1)]).unwrap();
        let (sb, wb) = Word::wedge(vec![s("b", 1), s("a", 1), s("c", 1)]).unwrap();
        let (sc, wc) = Word::wedge(vec![s("c", 1), s("a", 1), s("b", 1)]).unwrap();
        assert_eq!(wa, wb);
        assert_eq!(wa, wc);
        assert_eq!(sa, -sb);
        assert_eq!(sa, sc);
    }
}
