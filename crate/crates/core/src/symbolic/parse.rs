//! Parser for the text form of formal symbols and their combinations.
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := [coeff '*'] word | coeff
//! coeff   := int ['/' int]
//! word    := factor (('^' | '(x)') factor)*
//! factor  := '1' | symbol ('*' symbol)*
//! symbol  := '[' arg (',' arg)* ';' int (',' int)* ']'
//! arg     := '0' | 'inf' | '1' | power ('*' power)*
//! power   := ident ['^' ['-'] int]
//! ```
//!
//! `^` between symbols is the wedge; inside brackets it is an exponent.
//! The output of every `Display` impl for symbols, words and combinations
//! parses back to the same value.

use num_bigint::BigInt;
use num_traits::One;

use super::arg::{find_violation, Arg, Atom};
use super::symbol::{Joint, Symbol, SymbolComb, Word, WordComb};
#[cfg(test)]
use super::lincomb::LinComb;
use crate::error::{Error, Result};
use crate::Q;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected '{s}'"))
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let len = self.rest().chars().take_while(char::is_ascii_digit).count();
        if len == 0 {
            return self.err("expected an integer");
        }
        let v = self.rest()[..len].parse().expect("digits");
        self.pos += len;
        Ok(v)
    }

    fn small_uint(&mut self) -> Result<u32> {
        let start = self.pos;
        let v = self.uint()?;
        u32::try_from(v).or_else(|_| {
            self.pos = start;
            self.err("integer too large")
        })
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let mut chars = self.rest().char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return self.err("expected a variable name"),
        }
        let len = self
            .rest()
            .char_indices()
            .find(|&(_, c)| !(c.is_ascii_alphanumeric() || c == '_'))
            .map_or(self.rest().len(), |(i, _)| i);
        let name = self.rest()[..len].to_string();
        self.pos += len;
        Ok(name)
    }

    fn arg(&mut self) -> Result<Arg> {
        self.skip_ws();
        if self.rest().starts_with("inf")
            && !self.rest()[3..].starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 3;
            return Ok(Arg::Infinity);
        }
        match self.peek() {
            Some('0') => {
                self.pos += 1;
                return Ok(Arg::Zero);
            }
            Some('1') => {
                self.pos += 1;
                return Ok(Arg::one());
            }
            _ => {}
        }
        let mut pairs = Vec::new();
        loop {
            let name = self.ident()?;
            if name == "inf" {
                return self.err("'inf' cannot appear in a product");
            }
            let mut e = 1i32;
            if self.eat("^") {
                let neg = self.eat("-");
                let start = self.pos;
                let v = self.small_uint()?;
                e = i32::try_from(v).or_else(|_| {
                    self.pos = start;
                    self.err("exponent too large")
                })?;
                if neg {
                    e = -e;
                }
            }
            pairs.push((Atom::new(&name), e));
            if !self.eat("*") {
                break;
            }
        }
        Ok(Arg::from_exponents(pairs))
    }

    fn symbol(&mut self) -> Result<Symbol> {
        let start = self.pos;
        self.expect("[")?;
        let mut args = vec![self.arg()?];
        while self.eat(",") {
            args.push(self.arg()?);
        }
        self.expect(";")?;
        let mut index = vec![self.small_uint()?];
        while self.eat(",") {
            index.push(self.small_uint()?);
        }
        self.expect("]")?;
        if args.len() != index.len() {
            self.pos = start;
            return self.err(format!(
                "{} arguments but {} indices",
                args.len(),
                index.len()
            ));
        }
        if index.len() > 1 && index.contains(&0) {
            self.pos = start;
            return self.err("index 0 is only allowed in the depth-1 symbol [x;0]");
        }
        let sym = Symbol::new(args, index);
        if (sym.is_log() && sym.args[0].is_zero()) || (sym.weight() == 1 && sym.args[0].is_infinity()) {
            self.pos = start;
            return self.err(format!("{sym} is undefined"));
        }
        if let Some(v) = find_violation(&sym.args).filter(|_| !sym.is_log()) {
            self.pos = start;
            let args: Vec<String> = sym.args.iter().map(|a| a.to_string()).collect();
            return self.err(format!("inadmissible tuple ({}): {v}", args.join(",")));
        }
        Ok(sym)
    }

    /// A commutative monomial; `1` is the empty monomial.
    fn factor(&mut self) -> Result<Vec<Symbol>> {
        if self.peek() == Some('1') {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut v = vec![self.symbol()?];
        while self.peek() == Some('*') {
            self.pos += 1;
            v.push(self.symbol()?);
        }
        v.sort();
        Ok(v)
    }

    /// A word with its sign from canonical wedge ordering (`None` when it
    /// vanishes).
    fn word(&mut self) -> Result<Option<(i32, Word)>> {
        let start = self.pos;
        let mut factors = vec![self.factor()?];
        let mut joint = None;
        loop {
            let j = if self.eat("(x)") {
                Joint::Tensor
            } else if self.eat("^") {
                Joint::Wedge
            } else {
                break;
            };
            if joint.is_some_and(|k| k != j) {
                return self.err("cannot mix '^' and '(x)' in one word");
            }
            joint = Some(j);
            factors.push(self.factor()?);
        }
        match joint {
            None | Some(Joint::Tensor) => Ok(Some((
                1,
                Word {
                    joint: if factors.len() > 1 { Joint::Tensor } else { Joint::Wedge },
                    factors,
                },
            ))),
            Some(Joint::Wedge) => {
                let mut comps = Vec::new();
                for f in factors {
                    if f.len() != 1 {
                        self.pos = start;
                        return self.err("wedge factors must be single symbols");
                    }
                    comps.extend(f);
                }
                Ok(Word::wedge(comps))
            }
        }
    }

    fn coeff(&mut self) -> Result<Q> {
        let n = self.uint()?;
        if self.eat("/") {
            let start = self.pos;
            let d = self.uint()?;
            if d == BigInt::from(0) {
                self.pos = start;
                return self.err("zero denominator");
            }
            return Ok(Q::new(n, d));
        }
        Ok(Q::from_integer(n))
    }

    fn term(&mut self) -> Result<(Q, Option<(i32, Word)>)> {
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let save = self.pos;
            let c = self.coeff()?;
            if self.eat("*") {
                return Ok((c, self.word()?));
            }
            let bare_one = c.is_one() && self.src[save..self.pos].trim() == "1";
            if bare_one && (self.rest().trim_start().starts_with("(x)") || self.rest().trim_start().starts_with('^')) {
                self.pos = save;
                return Ok((Q::one(), self.word()?));
            }
            return Ok((c, Some((1, Word::one()))));
        }
        Ok((Q::one(), self.word()?))
    }

    fn expr(&mut self) -> Result<WordComb> {
        let mut out = WordComb::zero();
        let mut neg = self.eat("-");
        if !neg && self.eat("0") && self.peek().is_none() {
            return Ok(out);
        }
        loop {
            let (c, w) = self.term()?;
            if let Some((s, w)) = w {
                let c = if neg { -c } else { c };
                out.add_term(w, c * Q::from_integer(s.into()));
            }
            if self.eat("+") {
                neg = false;
            } else if self.eat("-") {
                neg = true;
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(out)
    }
}

/// Parses a linear combination of words (symbols, wedges, tensors).
pub fn parse_words(text: &str) -> Result<WordComb> {
    Parser::new(text).expr()
}

/// Parses a linear combination of symbols.
pub fn parse_expression(text: &str) -> Result<SymbolComb> {
    let words = parse_words(text)?;
    let mut out = SymbolComb::zero();
    for (w, c) in &words {
        match w.as_symbol() {
            Some(s) => out.add_term(s.clone(), c.clone()),
            None => {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("{w} is not a single symbol"),
                })
            }
        }
    }
    Ok(out)
}

/// Parses one symbol.
pub fn parse_symbol(text: &str) -> Result<Symbol> {
    let mut p = Parser::new(text);
    let s = p.symbol()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(s)
}

/// Parses a single argument such as `x^2*y^-1`.
pub fn parse_arg(text: &str) -> Result<Arg> {
    let mut p = Parser::new(text);
    let a = p.arg()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_two_symbol() {
        let e = parse_expression("[x,y;1,1]").unwrap();
        let s = Symbol::new(vec![Arg::atom("x"), Arg::atom("y")], vec![1, 1]);
        assert_eq!(e, LinComb::single(s));
    }

    #[test]
    fn inadmissible_is_reported_with_position() {
        match parse_expression("2*[x;2] + [x,x^-1;1,1]") {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 10);
                assert!(msg.contains("inadmissible"), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn two_terms() {
        let e = parse_expression("2*[x;2] - [x*y;3]").unwrap();
        assert_eq!(e.len(), 2);
        let xy = Arg::atom("x").mul(&Arg::atom("y")).unwrap();
        assert_eq!(e.coeff(&Symbol::depth1(xy, 3)), -Q::one());
    }

    #[test]
    fn rationals_and_specials() {
        let e = parse_expression("3/2*[x;2] - [x,0;1,1] + [inf,y;2,1]").unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e.to_string(), parse_expression(&e.to_string()).unwrap().to_string());
    }

    #[test]
    fn wedges_and_tensors_round_trip() {
        for text in [
            "[x;1] ^ [x;0]",
            "-[x;0] ^ [x;1]",
            "1 (x) [x,y;1,2]",
            "[x;2] (x) [x;0]*[y;0] - 1/2*[y;3] (x) 1",
            "[a;1] ^ [b;1] ^ [c;1]",
            "0",
        ] {
            let w = parse_words(text).unwrap();
            let printed = w.to_string();
            assert_eq!(parse_words(&printed).unwrap(), w, "{text}");
        }
        assert_eq!(
            parse_words("[x;0] ^ [x;1]").unwrap(),
            parse_words("-[x;1] ^ [x;0]").unwrap()
        );
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_expression("[x;"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expression("[x,y;1]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expression("[inf;1] +"), Err(Error::Parse { .. })));
    }
}
