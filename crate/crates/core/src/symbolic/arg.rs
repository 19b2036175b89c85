//! Formal arguments: elements of the free abelian group on named atoms,
//! extended by the special values `0` and `inf`.

use std::fmt;
use std::sync::Arc;

/// A named formal variable. Atoms order by name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: &str) -> Self {
        Atom(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A formal argument of a symbol.
///
/// `Group` holds a sorted list of `(atom, exponent)` pairs with nonzero
/// exponents; the empty list is the identity element `1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arg {
    Zero,
    Infinity,
    Group(Vec<(Atom, i32)>),
}

impl Arg {
    pub fn atom(name: &str) -> Self {
        Arg::Group(vec![(Atom::new(name), 1)])
    }

    pub fn one() -> Self {
        Arg::Group(Vec::new())
    }

    /// Builds a group element from unsorted `(atom, exponent)` pairs.
    pub fn from_exponents<I: IntoIterator<Item = (Atom, i32)>>(pairs: I) -> Self {
        let mut v: Vec<(Atom, i32)> = Vec::new();
        for (a, e) in pairs {
            v.push((a, e));
        }
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Atom, i32)> = Vec::with_capacity(v.len());
        for (a, e) in v {
            match out.last_mut() {
                Some((b, f)) if *b == a => *f += e,
                _ => out.push((a, e)),
            }
        }
        out.retain(|(_, e)| *e != 0);
        Arg::Group(out)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Arg::Group(v) if v.is_empty())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Arg::Zero)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Arg::Infinity)
    }

    pub fn exponents(&self) -> &[(Atom, i32)] {
        match self {
            Arg::Group(v) => v,
            _ => &[],
        }
    }

    /// Formal inverse; `0` and `inf` swap.
    pub fn inverse(&self) -> Self {
        match self {
            Arg::Zero => Arg::Infinity,
            Arg::Infinity => Arg::Zero,
            Arg::Group(v) => Arg::Group(v.iter().map(|(a, e)| (a.clone(), -e)).collect()),
        }
    }

    /// Product of two arguments; `None` when the product `0 * inf` is formed.
    pub fn mul(&self, other: &Arg) -> Option<Arg> {
        match (self, other) {
            (Arg::Zero, Arg::Infinity) | (Arg::Infinity, Arg::Zero) => None,
            (Arg::Infinity, _) | (_, Arg::Infinity) => Some(Arg::Infinity),
            (Arg::Zero, _) | (_, Arg::Zero) => Some(Arg::Zero),
            (Arg::Group(a), Arg::Group(b)) => Some(Arg::from_exponents(
                a.iter().cloned().chain(b.iter().cloned()),
            )),
        }
    }

    /// Product of a slice of arguments.
    pub fn product(args: &[Arg]) -> Option<Arg> {
        let mut acc = Arg::one();
        for a in args {
            acc = acc.mul(a)?;
        }
        Some(acc)
    }

    /// True when every exponent is positive (a product of atoms).
    pub fn is_regular(&self) -> bool {
        matches!(self, Arg::Group(v) if v.iter().all(|(_, e)| *e > 0))
    }

    /// True when every exponent is negative (a product of inverted atoms).
    pub fn is_inverted(&self) -> bool {
        matches!(self, Arg::Group(v) if !v.is_empty() && v.iter().all(|(_, e)| *e < 0))
    }
}

impl fmt::Debug for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Zero => f.write_str("0"),
            Arg::Infinity => f.write_str("inf"),
            Arg::Group(v) if v.is_empty() => f.write_str("1"),
            Arg::Group(v) => {
                for (i, (a, e)) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    if *e == 1 {
                        write!(f, "{a}")?;
                    } else {
                        write!(f, "{a}^{e}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// Why a tuple fails the admissibility condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// First position of the offending consecutive run (0-based, inclusive).
    pub start: usize,
    /// Last position of the offending run (inclusive).
    pub end: usize,
    pub kind: ViolationKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// The run multiplies to `1`.
    ProductIsOne,
    /// The run contains both `0` and `inf`.
    ZeroTimesInfinity,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolationKind::ProductIsOne => write!(
                f,
                "consecutive product of entries {}..={} equals 1",
                self.start + 1,
                self.end + 1
            ),
            ViolationKind::ZeroTimesInfinity => write!(
                f,
                "consecutive product of entries {}..={} is 0*inf (undefined)",
                self.start + 1,
                self.end + 1
            ),
        }
    }
}

/// Finds the first consecutive run `args[i..=j]` whose product is undefined
/// or equal to `1`.
pub fn find_violation(args: &[Arg]) -> Option<Violation> {
    for i in 0..args.len() {
        let mut acc = Some(Arg::one());
        for j in i..args.len() {
            acc = acc.and_then(|a| a.mul(&args[j]));
            match &acc {
                None => {
                    return Some(Violation {
                        start: i,
                        end: j,
                        kind: ViolationKind::ZeroTimesInfinity,
                    })
                }
                Some(p) if p.is_one() => {
                    return Some(Violation {
                        start: i,
                        end: j,
                        kind: ViolationKind::ProductIsOne,
                    })
                }
                _ => {}
            }
        }
    }
    None
}

/// The admissibility condition: every consecutive product is defined and
/// different from `1`.
pub fn admissible(args: &[Arg]) -> bool {
    find_violation(args).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Arg {
        Arg::atom("x")
    }
    fn y() -> Arg {
        Arg::atom("y")
    }

    #[test]
    fn free_atoms_are_admissible() {
        assert!(admissible(&[x(), y()]));
    }

    #[test]
    fn inverse_pair_is_rejected() {
        let v = find_violation(&[x(), x().inverse()]).unwrap();
        assert_eq!((v.start, v.end, v.kind), (0, 1, ViolationKind::ProductIsOne));
    }

    #[test]
    fn zero_next_to_infinity_is_rejected() {
        let v = find_violation(&[x(), Arg::Zero, Arg::Infinity]).unwrap();
        assert_eq!(v.kind, ViolationKind::ZeroTimesInfinity);
    }

    #[test]
    fn identity_entry_is_rejected() {
        assert!(!admissible(&[Arg::one()]));
    }

    #[test]
    fn products_absorb() {
        assert_eq!(x().mul(&Arg::Infinity), Some(Arg::Infinity));
        assert_eq!(Arg::Zero.mul(&y()), Some(Arg::Zero));
        assert_eq!(Arg::Zero.mul(&Arg::Infinity), None);
        assert!(x().mul(&x().inverse()).unwrap().is_one());
    }

    #[test]
    fn display() {
        let a = Arg::from_exponents([(Atom::new("y"), -1), (Atom::new("x"), 2)]);
        assert_eq!(a.to_string(), "x^2*y^-1");
    }
}
