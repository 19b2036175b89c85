//! Checks that the cobracket of a combination vanishes: exactly in the
//! exterior square of the multiplicative group (weight 2), at random
//! rational specializations, or numerically through the realization map.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::concrete::{check_concrete, delta_terms, normalize, weight_one_as_unit, ConcreteTerms, WedgeTerms};
use super::RelationSchema;
use crate::error::{Error, Result};
use crate::fields::{wedge_exact_check, FieldElem, FieldElement, RatFun};
use crate::numerics::{wedge_numeric_check, NumericOptions, NumericVerdict};
use crate::symbolic::Symbol;
use crate::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    #[serde(rename = "exact-wedge")]
    ExactWedge,
    #[serde(rename = "specialize")]
    Specialize,
    #[serde(rename = "numeric")]
    Numeric,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::ExactWedge, Mode::Specialize, Mode::Numeric];

    pub fn parse(s: &str) -> Result<Mode> {
        match s {
            "exact-wedge" | "exact" => Ok(Mode::ExactWedge),
            "specialize" => Ok(Mode::Specialize),
            "numeric" => Ok(Mode::Numeric),
            _ => Err(Error::Domain(format!("unknown mode {s}; use exact-wedge, specialize or numeric"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::ExactWedge => "exact-wedge",
            Mode::Specialize => "specialize",
            Mode::Numeric => "numeric",
        })
    }
}

/// How much a verdict establishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strength {
    #[serde(rename = "PROOF-AT-POINTS")]
    ProofAtPoints,
    #[serde(rename = "EVIDENCE")]
    Evidence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "NOT-APPLICABLE")]
    NotApplicable,
    #[serde(rename = "UNSUPPORTED")]
    Unsupported,
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingReport {
    pub name: String,
    pub mode: Mode,
    pub strength: Strength,
    pub verdict: Verdict,
    /// Points or specializations examined.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl VanishingReport {
    /// Pass, or a mode that does not apply to this input.
    pub fn acceptable(&self) -> bool {
        matches!(self.verdict, Verdict::Pass | Verdict::NotApplicable)
    }
}

#[derive(Clone, Debug)]
pub struct VanishingOptions {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// Numerators and denominators of random rationals are bounded by this.
    pub height: i64,
}

impl Default for VanishingOptions {
    fn default() -> Self {
        VanishingOptions {
            samples: 50,
            seed: 0,
            tol: 1e-8,
            height: 30,
        }
    }
}

fn weight_of<E>(e: &[(Symbol<E>, Q)]) -> Option<u32> {
    let mut ws = e.iter().map(|(s, _)| s.weight());
    let w = ws.next()?;
    ws.all(|v| v == w).then_some(w)
}

/// Maps a weight-2 wedge to `sum c (g ^ h)` over the multiplicative group,
/// with integer coefficients (the common denominator is irrelevant for a
/// zero test).
fn multiplicative_wedge<E: FieldElem>(w: &WedgeTerms<E>) -> Result<Vec<(E, E, i64)>> {
    let den = w.iter().fold(num_bigint::BigInt::one(), |acc, (_, _, c)| acc.lcm(c.denom()));
    let mut out = Vec::with_capacity(w.len());
    for (a, b, c) in w {
        let (g, eg) = weight_one_as_unit(a)?;
        let (h, eh) = weight_one_as_unit(b)?;
        let k = (c * Q::from_integer(den.clone()))
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::Domain("wedge coefficient overflows".into()))?;
        out.push((g, h, k * eg * eh));
    }
    Ok(out)
}

fn exact_zero(e: &ConcreteTerms<FieldElement>) -> Result<bool> {
    let w = delta_terms(e)?;
    wedge_exact_check(&multiplicative_wedge(&w)?)
}

fn as_functions(e: &ConcreteTerms<FieldElement>) -> Option<ConcreteTerms<RatFun>> {
    e.iter()
        .map(|(s, c)| {
            let args = s
                .args
                .iter()
                .map(|a| match a {
                    FieldElement::Function(f) => Some(f.clone()),
                    FieldElement::Rational(q) => Some(RatFun::constant(Arc::from(Vec::<String>::new()), q.clone())),
                    FieldElement::Finite(_) => None,
                })
                .collect::<Option<Vec<_>>>()?;
            Some((Symbol { args, index: s.index.clone() }, c.clone()))
        })
        .collect()
}

/// Constants in no variables are lifted into the common variable set so
/// that every argument can be evaluated at the same point.
fn unify_vars(e: ConcreteTerms<RatFun>) -> ConcreteTerms<RatFun> {
    let Some(vars) = e
        .iter()
        .flat_map(|(s, _)| s.args.iter())
        .map(|f| f.vars().clone())
        .find(|v| !v.is_empty())
    else {
        return e;
    };
    e.into_iter()
        .map(|(s, c)| {
            let args = s
                .args
                .into_iter()
                .map(|f| match f.numerator().constant_value() {
                    Some(num) if f.vars().is_empty() => {
                        let den = f.denominator().constant_value().expect("constant function");
                        RatFun::constant(vars.clone(), num / den)
                    }
                    _ => f,
                })
                .collect();
            (Symbol { args, index: s.index }, c)
        })
        .collect()
}

fn random_rational(rng: &mut ChaCha8Rng, height: i64) -> Q {
    loop {
        let n: i64 = rng.gen_range(-height..=height);
        let d: i64 = rng.gen_range(1..=height);
        if n != 0 {
            return Q::new(n.into(), d.into());
        }
    }
}

/// Specializes every argument at a rational point; zero arguments drop
/// their term, and poles or inadmissible tuples reject the point.
fn specialize(e: &ConcreteTerms<RatFun>, point: &[Q]) -> Result<ConcreteTerms<FieldElement>> {
    let like = Q::one();
    let mut out = Vec::with_capacity(e.len());
    for (s, c) in e {
        let args = s
            .args
            .iter()
            .map(|f| f.eval(point, &like))
            .collect::<Result<Vec<Q>>>()?;
        if args.iter().any(FieldElem::is_zero) {
            continue;
        }
        check_concrete(&args).map_err(|v| Error::Guard(format!("{s} specializes to an inadmissible tuple: {v}")))?;
        let args = args.into_iter().map(FieldElement::Rational).collect();
        out.push((Symbol { args, index: s.index.clone() }, c.clone()));
    }
    Ok(normalize(out))
}

/// Verifies that the cobracket of `e` vanishes.
///
/// * `exact-wedge` (weight 2): the cobracket in the exterior square of the
///   multiplicative group of the field of `e`, decided exactly.
/// * `specialize` (weight 2, function-field input): random rational
///   specializations, each decided exactly over `Q`.
/// * `numeric`: the realized cobracket at sampled complex points.
pub fn verify_vanishing(
    name: &str,
    e: &ConcreteTerms<FieldElement>,
    mode: Mode,
    opts: &VanishingOptions,
) -> Result<VanishingReport> {
    let report = |strength, verdict, checked, detail: Option<String>| VanishingReport {
        name: name.to_string(),
        mode,
        strength,
        verdict,
        checked,
        detail,
    };
    let weight = weight_of(e);
    match mode {
        Mode::ExactWedge => {
            if weight != Some(2) {
                return Ok(report(
                    Strength::ProofAtPoints,
                    Verdict::NotApplicable,
                    0,
                    Some("exact wedge checks need homogeneous weight 2".into()),
                ));
            }
            let ok = exact_zero(e)?;
            let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
            let detail = (!ok).then(|| "cobracket is nonzero in the exterior square".to_string());
            Ok(report(Strength::ProofAtPoints, verdict, 1, detail))
        }
        Mode::Specialize => {
            let functions = as_functions(e).map(unify_vars);
            let nvars = functions
                .as_ref()
                .and_then(|f| f.iter().flat_map(|(s, _)| s.args.first()).map(|a| a.vars().len()).max())
                .unwrap_or(0);
            if weight != Some(2) || nvars == 0 {
                return Ok(report(
                    Strength::Evidence,
                    Verdict::NotApplicable,
                    0,
                    Some("specialization needs a weight-2 combination over a function field".into()),
                ));
            }
            let f = functions.expect("checked above");
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut checked = 0;
            let mut attempts = 0;
            while checked < opts.samples {
                attempts += 1;
                if attempts > 100 * opts.samples.max(1) {
                    return Err(Error::Guard(format!(
                        "{name}: only {checked} admissible specializations in {attempts} draws"
                    )));
                }
                let point: Vec<Q> = (0..nvars).map(|_| random_rational(&mut rng, opts.height)).collect();
                let inst = match specialize(&f, &point) {
                    Ok(i) => i,
                    Err(Error::Guard(_) | Error::Pole(_) | Error::DivisionByZero) => continue,
                    Err(e) => return Err(e),
                };
                checked += 1;
                if !exact_zero(&inst)? {
                    let at: Vec<String> = point.iter().map(ToString::to_string).collect();
                    return Ok(report(
                        Strength::Evidence,
                        Verdict::Fail,
                        checked,
                        Some(format!("nonzero at ({})", at.join(", "))),
                    ));
                }
            }
            Ok(report(Strength::Evidence, Verdict::Pass, checked, None))
        }
        Mode::Numeric => {
            let Some(f) = as_functions(e).map(unify_vars) else {
                return Ok(report(
                    Strength::Evidence,
                    Verdict::NotApplicable,
                    0,
                    Some("no complex realization over a finite field".into()),
                ));
            };
            let w = delta_terms(&f)?;
            let nopts = NumericOptions {
                samples: opts.samples,
                seed: opts.seed,
                tol: opts.tol,
                ..Default::default()
            };
            let r = wedge_numeric_check(name, &w, &nopts)?;
            let verdict = match r.verdict {
                NumericVerdict::Pass => Verdict::Pass,
                NumericVerdict::Fail => Verdict::Fail,
                NumericVerdict::Unsupported => Verdict::Unsupported,
            };
            let detail = match verdict {
                Verdict::Pass => None,
                _ => Some(r.detail.clone().unwrap_or_else(|| {
                    format!(
                        "{} of {} points above {:e} (max {:e})",
                        r.failures, r.points, r.tolerance, r.max_abs_value
                    )
                })),
            };
            Ok(report(Strength::Evidence, verdict, r.points, detail))
        }
    }
}

/// The template of a schema as a combination over its function field.
pub fn schema_terms(schema: &RelationSchema) -> ConcreteTerms<FieldElement> {
    schema
        .generic()
        .into_iter()
        .map(|(s, c)| (s.map_args(|f| FieldElement::Function(f.clone())), c))
        .collect()
}

/// All modes for a schema's generic template.
pub fn verify_schema(schema: &RelationSchema, opts: &VanishingOptions) -> Result<Vec<VanishingReport>> {
    let e = schema_terms(schema);
    Mode::ALL
        .iter()
        .map(|&m| verify_vanishing(&schema.name, &e, m, opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::{builtin_schemata, depth_reduction_11, five_term, weight3_21};

    fn fast() -> VanishingOptions {
        VanishingOptions {
            samples: 30,
            ..Default::default()
        }
    }

    #[test]
    fn five_term_all_modes() {
        let reports = verify_schema(&five_term(), &fast()).unwrap();
        for r in &reports {
            assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        }
        assert_eq!(reports[0].strength, Strength::ProofAtPoints);
        assert_eq!(reports[1].strength, Strength::Evidence);
    }

    #[test]
    fn depth_reduction_all_modes() {
        for r in verify_schema(&depth_reduction_11(), &fast()).unwrap() {
            assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        }
    }

    #[test]
    fn weight_three_numeric() {
        let r = verify_vanishing("weight3_21", &schema_terms(&weight3_21()), Mode::Numeric, &fast()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        let ex = verify_vanishing("weight3_21", &schema_terms(&weight3_21()), Mode::ExactWedge, &fast()).unwrap();
        assert_eq!(ex.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn a_single_dilogarithm_fails() {
        let e: ConcreteTerms<FieldElement> = vec![schema_terms(&five_term())[0].clone()];
        for m in Mode::ALL {
            let r = verify_vanishing("[x]_2", &e, m, &fast()).unwrap();
            assert_eq!(r.verdict, Verdict::Fail, "{r:?}");
        }
    }

    #[test]
    fn rational_instances_exactly() {
        let inst = five_term().instantiate(&[Q::from_integer(2.into()), Q::from_integer(3.into())]).unwrap();
        let e: ConcreteTerms<FieldElement> =
            inst.into_iter().map(|(s, c)| (s.map_args(|q| FieldElement::Rational(q.clone())), c)).collect();
        let r = verify_vanishing("five_term(2,3)", &e, Mode::ExactWedge, &fast()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let n = verify_vanishing("five_term(2,3)", &e, Mode::Numeric, &fast()).unwrap();
        assert_eq!(n.verdict, Verdict::Pass, "{n:?}");
    }

    #[test]
    fn every_schema_passes_applicable_modes() {
        let opts = VanishingOptions {
            samples: 12,
            ..Default::default()
        };
        for s in builtin_schemata() {
            for r in verify_schema(&s, &opts).unwrap() {
                assert!(r.acceptable(), "{r:?}");
            }
        }
    }
}
