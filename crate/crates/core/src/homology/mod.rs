//! Weight-2 groups over finite fields: the group generated by `[x]_2`,
//! `x` in `F_q \ {0,1}`, modulo five-term relations, and its order through
//! Smith normal form.
//!
//! The cobracket lands in the exterior square of the cyclic group `F_q^*`,
//! which vanishes, so the first cohomology in weight 2 is the whole
//! presented group.

pub mod snf;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

pub use snf::{snf, GroupOrder, SnfResult};

use crate::error::{Error, Result};
use crate::fields::{FieldElem, Gf, GfElem};

/// Generators and an integer relation matrix; column `j` is `generators[j]`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub q: u64,
    pub generators: Vec<GfElem>,
    pub relations: Vec<Vec<i64>>,
}

impl Presentation {
    pub fn order(&self) -> SnfResult {
        snf(&self.relations, self.generators.len())
    }
}

/// The five-term combination `[x]+[y]-[xy]-[y(1-x)/(1-xy)]-[x(1-y)/(1-xy)]`
/// as (argument, coefficient) pairs, or `None` when `1 - xy = 0`.
pub fn five_term_args<E: FieldElem>(x: &E, y: &E) -> Option<[(E, i64); 5]> {
    let xy = x.mul(y);
    let d = xy.one_minus().inv().ok()?;
    Some([
        (x.clone(), 1),
        (y.clone(), 1),
        (xy, -1),
        (y.mul(&x.one_minus()).mul(&d), -1),
        (x.mul(&y.one_minus()).mul(&d), -1),
    ])
}

fn degenerate<E: FieldElem>(a: &E) -> bool {
    a.is_zero() || a.is_one()
}

/// Presentation of the weight-2 group of `F_q`, built with the first
/// irreducible modulus found for `q`.
pub fn build_b2_presentation(q: u64) -> Result<Presentation> {
    if q <= 3 {
        return Err(Error::Domain(format!("the weight-2 presentation needs q > 3, got {q}")));
    }
    let field = Arc::new(Gf::new(q)?);
    build_b2_presentation_over(&field.elements())
}

/// Same as [`build_b2_presentation`] but with the field elements supplied in
/// the given order; the group order does not depend on it.
pub fn build_b2_presentation_over(elements: &[GfElem]) -> Result<Presentation> {
    let q = elements.len() as u64;
    if q <= 3 {
        return Err(Error::Domain(format!("the weight-2 presentation needs q > 3, got {q}")));
    }
    let generators: Vec<GfElem> = elements.iter().filter(|x| !degenerate(*x)).cloned().collect();
    let column: BTreeMap<u64, usize> = generators.iter().enumerate().map(|(j, g)| (g.index(), j)).collect();
    let mut seen = BTreeSet::new();
    let mut relations = Vec::new();
    for x in &generators {
        for y in &generators {
            let Some(terms) = five_term_args(x, y) else {
                continue;
            };
            if terms.iter().any(|(a, _)| degenerate(a)) {
                continue;
            }
            let mut row = vec![0i64; generators.len()];
            for (a, c) in &terms {
                row[column[&a.index()]] += c;
            }
            if row.iter().any(|&v| v != 0) && seen.insert(row.clone()) {
                relations.push(row);
            }
        }
    }
    Ok(Presentation {
        q,
        generators,
        relations,
    })
}

/// `|H^1|` in weight 2 over `F_q`.
pub fn h1_order(q: u64) -> Result<GroupOrder> {
    Ok(build_b2_presentation(q)?.order().order())
}

/// One line of the finite-field table.
#[derive(Clone, Debug, Serialize)]
pub struct BlochRow {
    pub q: u64,
    pub generators: usize,
    pub relations: usize,
    pub invariant_factors: Vec<String>,
    pub h1: String,
    pub expected: u64,
    /// Ratio `|H^1| / (q+1)` in lowest terms, when finite.
    pub ratio: Option<String>,
    pub match_up_to_2_3: bool,
    pub exact: bool,
}

fn only_2_and_3(mut n: BigInt) -> bool {
    for p in [2u32, 3] {
        let p = BigInt::from(p);
        while !n.is_zero() && (&n % &p).is_zero() {
            n /= &p;
        }
    }
    n.is_one()
}

pub fn bloch_row(q: u64) -> Result<BlochRow> {
    let pres = build_b2_presentation(q)?;
    let res = pres.order();
    let expected = q + 1;
    let (h1, ratio, up_to, exact) = match res.order() {
        GroupOrder::Infinite => ("INFINITE".to_string(), None, false, false),
        GroupOrder::Finite(n) => {
            let e = BigInt::from(expected);
            let g = n.gcd(&e);
            let (num, den) = (&n / &g, &e / &g);
            let up_to = only_2_and_3(num.clone()) && only_2_and_3(den.clone());
            (n.to_string(), Some(format!("{num}/{den}")), up_to, n.to_u64() == Some(expected))
        }
    };
    Ok(BlochRow {
        q,
        generators: pres.generators.len(),
        relations: pres.relations.len(),
        invariant_factors: res.nontrivial().iter().map(ToString::to_string).collect(),
        h1,
        expected,
        ratio,
        match_up_to_2_3: up_to,
        exact,
    })
}

/// Rows for several `q`, computed in parallel, in input order.
pub fn bloch_table(qs: &[u64]) -> Result<Vec<BlochRow>> {
    qs.par_iter().map(|&q| bloch_row(q)).collect()
}

pub const BLOCH_TSV_HEADER: &str = "q\tgens\trels\tfactors\th1\tq+1\tmatch_2_3\texact";

impl BlochRow {
    pub fn tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t[{}]\t{}\t{}\t{}\t{}",
            self.q,
            self.generators,
            self.relations,
            self.invariant_factors.join(","),
            self.h1,
            self.expected,
            self.match_up_to_2_3,
            self.exact
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn generator_counts() {
        assert_eq!(build_b2_presentation(5).unwrap().generators.len(), 3);
        assert_eq!(build_b2_presentation(7).unwrap().generators.len(), 5);
        assert_eq!(build_b2_presentation(4).unwrap().generators.len(), 2);
    }

    #[test]
    fn small_q_rejected() {
        assert!(build_b2_presentation(3).is_err());
        assert!(build_b2_presentation(2).is_err());
        assert!(build_b2_presentation(6).is_err());
    }

    // Independent count over Z/7 with plain modular integers.
    #[test]
    fn q7_rows_match_direct_enumeration() {
        let p = 7i64;
        let inv = |a: i64| (1..p).find(|b| a * b % p == 1).unwrap();
        let m = |a: i64| a.rem_euclid(p);
        let mut rows = BTreeSet::new();
        for x in 2..p {
            for y in 2..p {
                let xy = m(x * y);
                if m(1 - xy) == 0 {
                    continue;
                }
                let d = inv(m(1 - xy));
                let args = [x, y, xy, m(y * (1 - x) * d), m(x * (1 - y) * d)];
                if args.iter().any(|&a| a == 0 || a == 1) {
                    continue;
                }
                let mut row = vec![0i64; (p - 2) as usize];
                for (a, c) in args.iter().zip([1, 1, -1, -1, -1]) {
                    row[(a - 2) as usize] += c;
                }
                if row.iter().any(|&v| v != 0) {
                    rows.insert(row);
                }
            }
        }
        let pres = build_b2_presentation(7).unwrap();
        let got: BTreeSet<Vec<i64>> = pres.relations.iter().cloned().collect();
        assert_eq!(got, rows);
    }

    #[test]
    fn orders_are_q_plus_one() {
        for q in [5u64, 7, 11] {
            assert_eq!(h1_order(q).unwrap(), GroupOrder::Finite((q + 1).into()), "q={q}");
        }
    }

    #[test]
    fn independent_of_enumeration_order() {
        let field = Arc::new(Gf::new(9).unwrap());
        let base = build_b2_presentation_over(&field.elements()).unwrap().order().order();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..4 {
            let mut els = field.elements();
            els.shuffle(&mut rng);
            assert_eq!(build_b2_presentation_over(&els).unwrap().order().order(), base);
        }
    }

    #[test]
    fn five_term_over_q_has_expected_arguments() {
        let x = Q::new(2.into(), 3.into());
        let y = Q::new(5.into(), 7.into());
        let t = five_term_args(&x, &y).unwrap();
        assert_eq!(t[2].0, Q::new(10.into(), 21.into()));
        assert_eq!(t[3].0, Q::new(5.into(), 11.into()));
        assert_eq!(t[4].0, Q::new(4.into(), 11.into()));
    }

    #[test]
    fn table_row_fields() {
        let row = bloch_row(5).unwrap();
        assert_eq!(row.h1, "6");
        assert!(row.exact && row.match_up_to_2_3);
        assert_eq!(row.ratio.as_deref(), Some("1/1"));
        assert!(row.tsv().starts_with("5\t3\t"));
    }
}
