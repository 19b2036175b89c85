//! Named relation schemata, their instantiation over concrete fields,
//! rewriting into depth 1, and cobracket-vanishing checks.
//!
//! A schema is a linear combination of symbols whose arguments are rational
//! functions of its parameters. Concrete combinations are kept as plain
//! term lists so that the same code runs over exact fields and over
//! floating-point complex numbers.

pub mod concrete;
pub mod gr;
pub mod reduce;
pub mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

pub use concrete::{check_concrete, delta_terms, formal_to_functions, normalize, show_terms, ConcreteTerms, WedgeTerms};
pub use gr::{gr_translate, gr_translate_formal, GrSymbol};
pub use reduce::reduce_to_depth1;
pub use verify::{schema_terms, verify_schema, verify_vanishing, Mode, Strength, VanishingOptions, VanishingReport, Verdict};

use crate::error::{Error, Result};
use crate::fields::{FieldElem, RatFun};
use crate::symbolic::Symbol;
use crate::Q;

#[derive(Clone, Debug)]
pub struct RelationSchema {
    pub name: String,
    /// Parameter names; the arity is their number.
    pub params: Vec<String>,
    pub template: ConcreteTerms<RatFun>,
    /// What the relation expresses.
    pub anchor: String,
}

/// One catalog line.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub arity: usize,
    pub params: Vec<String>,
    pub template: String,
    pub weight: u32,
    pub anchor: String,
}

impl RelationSchema {
    /// Builds a schema from `(coefficient, arguments, index)` rows, each
    /// argument written as a rational function of `params`.
    pub fn from_rows(name: &str, params: &[&str], rows: &[(i64, &[&str], &[u32])], anchor: &str) -> Result<Self> {
        let vars: Arc<[String]> = params.iter().map(|p| p.to_string()).collect();
        let mut template = Vec::new();
        for (c, args, index) in rows {
            let args = args
                .iter()
                .map(|a| RatFun::parse(vars.clone(), a))
                .collect::<Result<Vec<_>>>()?;
            template.push((Symbol::new(args, index.to_vec()), Q::from_integer((*c).into())));
        }
        Ok(RelationSchema {
            name: name.to_string(),
            params: params.iter().map(|p| p.to_string()).collect(),
            template: normalize(template),
            anchor: anchor.to_string(),
        })
    }

    pub fn arity(&self) -> usize {
        self.params.len()
    }

    pub fn weight(&self) -> u32 {
        self.template.iter().map(|(s, _)| s.weight()).max().unwrap_or(0)
    }

    /// Specializes the template at `values` (one per parameter) in any
    /// field. Terms with a zero argument vanish and are dropped; poles and
    /// inadmissible tuples are guard violations.
    pub fn instantiate<E: FieldElem>(&self, values: &[E]) -> Result<ConcreteTerms<E>> {
        if values.len() != self.arity() {
            return Err(Error::Domain(format!(
                "{} takes {} parameters, got {}",
                self.name,
                self.arity(),
                values.len()
            )));
        }
        let like = &values[0];
        let at = || {
            self.params
                .iter()
                .zip(values)
                .map(|(p, v)| format!("{p}={v}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut out = Vec::new();
        for (sym, c) in &self.template {
            let args = sym
                .args
                .iter()
                .map(|f| f.eval(values, like))
                .collect::<Result<Vec<E>>>()
                .map_err(|e| match e {
                    Error::Pole(_) | Error::DivisionByZero => {
                        Error::Guard(format!("{} at ({}): a denominator vanishes in {sym}", self.name, at()))
                    }
                    other => other,
                })?;
            let s = Symbol::new(args, sym.index.clone());
            if s.args.iter().any(FieldElem::is_zero) {
                continue;
            }
            check_concrete(&s.args)
                .map_err(|v| Error::Guard(format!("{} at ({}): {s} has {v}", self.name, at())))?;
            out.push((s, c.clone()));
        }
        Ok(normalize(out))
    }

    /// The admissibility guard: whether the schema can be instantiated.
    pub fn guard<E: FieldElem>(&self, values: &[E]) -> Result<()> {
        self.instantiate(values).map(|_| ())
    }

    /// The template itself, as a combination over the field of rational
    /// functions in the parameters.
    pub fn generic(&self) -> ConcreteTerms<RatFun> {
        self.template.clone()
    }

    /// The schema with the sign of term `i` flipped; a non-relation used to
    /// show that the checks can fail.
    pub fn mutate(&self, i: usize) -> RelationSchema {
        let mut m = self.clone();
        m.template[i].1 = -m.template[i].1.clone();
        m.name = format!("{}~flip{}", self.name, i);
        m
    }

    pub fn catalog_entry(&self) -> CatalogEntry {
        CatalogEntry {
            name: self.name.clone(),
            arity: self.arity(),
            params: self.params.clone(),
            template: show_terms(&self.template),
            weight: self.weight(),
            anchor: self.anchor.clone(),
        }
    }
}

impl fmt::Display for RelationSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}) = {}", self.name, self.params.join(","), show_terms(&self.template))
    }
}

/// `2([x]_n + (-1)^n [1/x]_n)`; a relation for `n >= 2`.
pub fn inversion_depth1(n: u32) -> RelationSchema {
    assert!(n >= 1, "weight must be positive");
    let sign = if n.is_multiple_of(2) { 2 } else { -2 };
    RelationSchema::from_rows(
        &format!("inversion_depth1({n})"),
        &["x"],
        &[(2, &["x"], &[n]), (sign, &["1/x"], &[n])],
        "depth-1 inversion: constant in x, and zero at x = 0",
    )
    .expect("built-in schema parses")
}

pub fn depth_reduction_11() -> RelationSchema {
    RelationSchema::from_rows(
        "depth_reduction_11",
        &["x", "y"],
        &[
            (1, &["x", "y"], &[1, 1]),
            (1, &["x"], &[2]),
            (-1, &["x*(1-y)/(1-x*y)"], &[2]),
        ],
        "writes [x,y]_{1,1} with depth-1 symbols",
    )
    .expect("built-in schema parses")
}

pub fn five_term() -> RelationSchema {
    RelationSchema::from_rows(
        "five_term",
        &["x", "y"],
        &[
            (1, &["x"], &[2]),
            (1, &["y"], &[2]),
            (-1, &["x*y"], &[2]),
            (-1, &["y*(1-x)/(1-x*y)"], &[2]),
            (-1, &["x*(1-y)/(1-x*y)"], &[2]),
        ],
        "five-term relation of the dilogarithm",
    )
    .expect("built-in schema parses")
}

pub fn weight3_21() -> RelationSchema {
    RelationSchema::from_rows(
        "weight3_21",
        &["x", "y"],
        &[
            (1, &["x", "y"], &[2, 1]),
            (1, &["x"], &[3]),
            (1, &["(1-y)/(1-x*y)"], &[3]),
            (1, &["x*y"], &[3]),
            (1, &["-x*y/(1-x*y)"], &[3]),
            (-1, &["1-y"], &[3]),
            (-1, &["x*(1-y)/(1-x*y)"], &[3]),
        ],
        "writes [x,y]_{2,1} with depth-1 symbols",
    )
    .expect("built-in schema parses")
}

pub fn weight3_111() -> RelationSchema {
    RelationSchema::from_rows(
        "weight3_111",
        &["x", "y", "z"],
        &[
            (1, &["x", "y", "z"], &[1, 1, 1]),
            (-1, &["-y/(1-y)"], &[3]),
            (1, &["(1-x)/(1-x*y*z)"], &[3]),
            (-1, &["x*y"], &[3]),
            (1, &["x*y*(1-z)/(1-x*y*z)"], &[3]),
            (-1, &["1-x"], &[3]),
            (1, &["-y*(1-x)/(1-y)"], &[3]),
            (1, &["-y*(1-z)/(1-y)"], &[3]),
            (-1, &["-y*(1-x)*(1-z)/((1-x*y*z)*(1-y))"], &[3]),
        ],
        "writes [x,y,z]_{1,1,1} with depth-1 symbols",
    )
    .expect("built-in schema parses")
}

pub fn sym_12() -> RelationSchema {
    RelationSchema::from_rows(
        "sym_12",
        &["x", "y"],
        &[
            (1, &["x", "y"], &[1, 2]),
            (1, &["y", "x"], &[2, 1]),
            (1, &["x*y"], &[3]),
        ],
        "relates [x,y]_{1,2} to [y,x]_{2,1}",
    )
    .expect("built-in schema parses")
}

pub fn weight4_22() -> RelationSchema {
    RelationSchema::from_rows(
        "weight4_22",
        &["x", "y"],
        &[
            (1, &["x", "y"], &[2, 2]),
            (-1, &["y"], &[4]),
            (-1, &["x*y"], &[4]),
            (-1, &["y", "x"], &[3, 1]),
            (-1, &["x*y", "1/x"], &[3, 1]),
            (1, &["x", "y"], &[3, 1]),
        ],
        "writes [x,y]_{2,2} with [.]_4 and [.,.]_{3,1}",
    )
    .expect("built-in schema parses")
}

/// Every built-in schema; the inversion family is listed for `n = 2, 3, 4`.
pub fn builtin_schemata() -> Vec<RelationSchema> {
    let mut out: Vec<RelationSchema> = (2..=4).map(inversion_depth1).collect();
    out.extend([
        depth_reduction_11(),
        five_term(),
        weight3_21(),
        weight3_111(),
        sym_12(),
        weight4_22(),
    ]);
    out
}

/// Looks up a schema by name; `inversion_depth1(n)` accepts any `n >= 1`.
pub fn schema_by_name(name: &str) -> Result<RelationSchema> {
    let name = name.trim();
    if let Some(n) = name.strip_prefix("inversion_depth1(").and_then(|r| r.strip_suffix(')')) {
        let n: u32 = n
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("bad weight in {name}")))?;
        if n == 0 {
            return Err(Error::Domain("inversion_depth1 needs n >= 1".into()));
        }
        return Ok(inversion_depth1(n));
    }
    builtin_schemata()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::Domain(format!("unknown relation schema {name}")))
}

pub fn catalog() -> Vec<CatalogEntry> {
    builtin_schemata().iter().map(RelationSchema::catalog_entry).collect()
}

/// Catalog as pretty JSON.
pub fn catalog_json() -> String {
    serde_json::to_string_pretty(&catalog()).expect("catalog serializes")
}

/// Parameter values by name, for callers that build points from a map.
pub fn values_in_order<E: Clone>(schema: &RelationSchema, point: &BTreeMap<String, E>) -> Result<Vec<E>> {
    schema
        .params
        .iter()
        .map(|p| {
            point
                .get(p)
                .cloned()
                .ok_or_else(|| Error::Domain(format!("no value for parameter {p}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{FieldSpec, GfElem};
    use num_traits::One;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn args_of(t: &ConcreteTerms<Q>) -> Vec<(Vec<Q>, Q)> {
        t.iter().map(|(s, c)| (s.args.clone(), c.clone())).collect()
    }

    #[test]
    fn five_term_at_two_three() {
        let t = five_term().instantiate(&[q(2, 1), q(3, 1)]).unwrap();
        // xy = 6, y(1-x)/(1-xy) = 3/5, x(1-y)/(1-xy) = 4/5
        let mut want = vec![
            (vec![q(2, 1)], q(1, 1)),
            (vec![q(3, 1)], q(1, 1)),
            (vec![q(6, 1)], q(-1, 1)),
            (vec![q(3, 5)], q(-1, 1)),
            (vec![q(4, 5)], q(-1, 1)),
        ];
        let mut got = args_of(&t);
        want.sort();
        got.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn guard_rejects_one() {
        let e = five_term().instantiate(&[q(1, 1), q(3, 1)]).unwrap_err();
        assert!(matches!(e, Error::Guard(_)), "{e}");
        let e = depth_reduction_11().instantiate(&[q(1, 1), q(3, 1)]).unwrap_err();
        assert!(matches!(e, Error::Guard(_)), "{e}");
    }

    #[test]
    fn guard_rejects_poles() {
        // xy = 1 is caught before the pole of the last two terms
        let e = five_term().instantiate(&[q(2, 1), q(1, 2)]).unwrap_err();
        assert!(matches!(e, Error::Guard(_)), "{e}");
        let s = RelationSchema::from_rows("inv", &["x"], &[(1, &["1/x"], &[2])], "").unwrap();
        let e = s.instantiate(&[q(0, 1)]).unwrap_err();
        assert!(e.to_string().contains("denominator"), "{e}");
    }

    #[test]
    fn inversion_at_two() {
        let t = inversion_depth1(2).instantiate(&[q(2, 1)]).unwrap();
        let mut got = args_of(&t);
        got.sort();
        assert_eq!(got, vec![(vec![q(1, 2)], q(2, 1)), (vec![q(2, 1)], q(2, 1))]);
        let t3 = inversion_depth1(3).instantiate(&[q(2, 1)]).unwrap();
        assert!(t3.iter().any(|(s, c)| s.args == [q(1, 2)] && *c == q(-2, 1)));
    }

    #[test]
    fn zero_arguments_are_dropped() {
        // at x = 0 every term of weight3_21 has a zero argument or cancels
        let t = weight3_21().instantiate(&[q(0, 1), q(5, 1)]).unwrap();
        assert!(t.is_empty(), "{}", show_terms(&t));
    }

    #[test]
    fn instantiation_over_finite_fields() {
        let f = FieldSpec::parse("Fq:7").unwrap();
        let FieldSpec::Finite(gf) = f else { unreachable!() };
        let el = |k: u64| GfElem::zero(gf.clone()).from_rational(&q(k as i64, 1)).unwrap();
        // at (2, 3) two terms cancel; (2, 5) gives the distinct arguments 2, 5, 3, 6, 4
        assert_eq!(five_term().instantiate(&[el(2), el(3)]).unwrap().len(), 3);
        let t = five_term().instantiate(&[el(2), el(5)]).unwrap();
        assert_eq!(t.len(), 5);
        // 2 * 4 = 1 in F_7
        assert!(five_term().instantiate(&[el(2), el(4)]).is_err());
    }

    #[test]
    fn generic_template_is_admissible() {
        for s in builtin_schemata() {
            for (sym, _) in &s.template {
                check_concrete(&sym.args).unwrap_or_else(|v| panic!("{}: {sym} {v}", s.name));
            }
        }
    }

    #[test]
    fn catalog_lists_everything() {
        let c = catalog();
        let names: Vec<&str> = c.iter().map(|e| e.name.as_str()).collect();
        for n in [
            "inversion_depth1(2)",
            "depth_reduction_11",
            "five_term",
            "weight3_21",
            "weight3_111",
            "sym_12",
            "weight4_22",
        ] {
            assert!(names.contains(&n), "{n}");
        }
        let json: serde_json::Value = serde_json::from_str(&catalog_json()).unwrap();
        assert_eq!(json.as_array().unwrap().len(), c.len());
        assert_eq!(schema_by_name("five_term").unwrap().arity(), 2);
        assert_eq!(schema_by_name("inversion_depth1(7)").unwrap().weight(), 7);
        assert!(schema_by_name("six_term").is_err());
    }

    #[test]
    fn mutation_flips_one_sign() {
        let s = five_term();
        let m = s.mutate(0);
        assert_eq!(m.template[0].1, -s.template[0].1.clone());
        assert_eq!(m.template[1..], s.template[1..]);
        assert!(One::is_one(&num_traits::Signed::abs(&s.template[0].1)));
    }
}
