//! Seeded sampling checks of realized combinations and wedges.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::realize::{realize, realize_wedge};
use super::Cx;
use crate::error::{Error, Result};
use crate::fields::{FieldElem, RatFun};
use crate::relations::{ConcreteTerms, WedgeTerms};
use crate::symbolic::Symbol;
use crate::Q;

#[derive(Clone, Debug)]
pub struct NumericOptions {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// Draws allowed per accepted point before giving up.
    pub max_attempts: usize,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions {
            samples: 100,
            seed: 0,
            tol: 1e-8,
            max_attempts: 200,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NumericVerdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "UNSUPPORTED")]
    Unsupported,
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericReport {
    pub name: String,
    pub points: usize,
    /// Points whose value exceeded the tolerance.
    pub failures: usize,
    pub max_abs_value: f64,
    pub tolerance: f64,
    pub verdict: NumericVerdict,
    /// Always `EVIDENCE`: sampling never proves a relation.
    pub strength: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl NumericReport {
    fn new(name: &str, tol: f64) -> Self {
        NumericReport {
            name: name.to_string(),
            points: 0,
            failures: 0,
            max_abs_value: 0.0,
            tolerance: tol,
            verdict: NumericVerdict::Pass,
            strength: "EVIDENCE",
            detail: None,
        }
    }

    fn record(&mut self, v: f64) {
        self.points += 1;
        let a = v.abs();
        // negated so that NaN counts as a failure
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(a < self.tolerance) {
            self.failures += 1;
            self.verdict = NumericVerdict::Fail;
        }
        if a > self.max_abs_value || a.is_nan() {
            self.max_abs_value = a;
        }
    }

    fn unsupported(name: &str, tol: f64, why: String) -> Self {
        let mut r = NumericReport::new(name, tol);
        r.verdict = NumericVerdict::Unsupported;
        r.detail = Some(why);
        r
    }

    pub fn passed(&self) -> bool {
        self.verdict == NumericVerdict::Pass
    }

    /// Fraction of points that failed.
    pub fn failure_rate(&self) -> f64 {
        if self.points == 0 {
            return 0.0;
        }
        self.failures as f64 / self.points as f64
    }
}

/// Draws points with coordinates in the annulus `0.1 < |z| < 0.9` or its
/// image under `z -> 1/z`, with uniform angle.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn value(&mut self) -> Complex64 {
        let r: f64 = self.rng.gen_range(0.1..0.9);
        let r = if self.rng.gen_bool(0.5) { r } else { 1.0 / r };
        let t: f64 = self.rng.gen_range(0.0..2.0 * PI);
        Complex64::from_polar(r, t)
    }

    pub fn point(&mut self, nvars: usize) -> Vec<Cx> {
        (0..nvars).map(|_| Cx(self.value())).collect()
    }
}

/// Whether an error means "draw another point".
fn resample(e: &Error) -> bool {
    matches!(e, Error::Guard(_) | Error::Pole(_) | Error::DivisionByZero)
}

fn eval_symbol(s: &Symbol<RatFun>, point: &[Cx]) -> Result<Symbol<Cx>> {
    let like = Cx(Complex64::new(1.0, 0.0));
    let args = s
        .args
        .iter()
        .map(|f| f.eval(point, &like))
        .collect::<Result<Vec<Cx>>>()?;
    Ok(Symbol {
        args,
        index: s.index.clone(),
    })
}

fn eval_terms(terms: &[(Symbol<RatFun>, Q)], point: &[Cx]) -> Result<ConcreteTerms<Cx>> {
    let mut out = Vec::with_capacity(terms.len());
    for (s, c) in terms {
        let e = eval_symbol(s, point)?;
        if e.args.iter().any(FieldElem::is_zero) {
            continue;
        }
        out.push((e, c.clone()));
    }
    Ok(out)
}

fn eval_wedges(w: &[(Symbol<RatFun>, Symbol<RatFun>, Q)], point: &[Cx]) -> Result<Vec<(Symbol<Cx>, Symbol<Cx>, Q)>> {
    w.iter()
        .map(|(a, b, c)| Ok((eval_symbol(a, point)?, eval_symbol(b, point)?, c.clone())))
        .collect()
}

fn nvars<'a, I: IntoIterator<Item = &'a Symbol<RatFun>>>(symbols: I) -> usize {
    symbols
        .into_iter()
        .flat_map(|s| s.args.first())
        .map(|f| f.vars().len())
        .next()
        .unwrap_or(0)
}

/// What a realized combination should do across points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Vanishing,
    /// Equal to its value at the first accepted point.
    Constant,
}

/// Realizes a combination of symbols with rational-function arguments at
/// sampled points and compares each value with zero (or with the first
/// value).
pub fn realize_check(
    name: &str,
    terms: &[(Symbol<RatFun>, Q)],
    expect: Expectation,
    opts: &NumericOptions,
) -> Result<NumericReport> {
    let n = nvars(terms.iter().map(|(s, _)| s));
    let mut sampler = Sampler::new(opts.seed);
    let mut report = NumericReport::new(name, opts.tol);
    let mut base: Option<f64> = None;
    for _ in 0..opts.samples {
        let mut value = None;
        for _ in 0..opts.max_attempts {
            let p = sampler.point(n);
            match eval_terms(terms, &p).and_then(|t| realize(&t)) {
                Ok(v) => {
                    value = Some(v);
                    break;
                }
                Err(Error::Unsupported(why)) => return Ok(NumericReport::unsupported(name, opts.tol, why)),
                Err(e) if resample(&e) => continue,
                Err(e) => return Err(e),
            }
        }
        let v = value.ok_or_else(|| Error::Guard(format!("{name}: no admissible sample point found")))?;
        match expect {
            Expectation::Vanishing => report.record(v),
            Expectation::Constant => {
                let b = *base.get_or_insert(v);
                report.record(v - b);
            }
        }
    }
    Ok(report)
}

/// Realizes a wedge whose components have rational-function arguments:
/// the product form for components of different weights and the two-point
/// alternating form for equal weights.
pub fn wedge_numeric_check(
    name: &str,
    w: &WedgeTerms<RatFun>,
    opts: &NumericOptions,
) -> Result<NumericReport> {
    let mut report = NumericReport::new(name, opts.tol);
    if w.is_empty() {
        report.detail = Some("identically zero before evaluation".into());
        return Ok(report);
    }
    let n = nvars(w.iter().flat_map(|(a, b, _)| [a, b]));
    let mut sampler = Sampler::new(opts.seed);
    for _ in 0..opts.samples {
        let mut value = None;
        for _ in 0..opts.max_attempts {
            let p = sampler.point(n);
            let q = sampler.point(n);
            let v = eval_wedges(w, &p)
                .and_then(|wp| eval_wedges(w, &q).map(|wq| (wp, wq)))
                .and_then(|(wp, wq)| realize_wedge(&wp, &wq));
            match v {
                Ok(v) => {
                    value = Some(v);
                    break;
                }
                Err(Error::Unsupported(why)) => return Ok(NumericReport::unsupported(name, opts.tol, why)),
                Err(e) if resample(&e) => continue,
                Err(e) => return Err(e),
            }
        }
        let v = value.ok_or_else(|| Error::Guard(format!("{name}: no admissible sample point found")))?;
        report.record(v);
    }
    Ok(report)
}
