//! Piecewise-constant functions on the line, eventually-constant sequences on
//! the integers, and exact variation.

mod sequence;
mod step;

pub use sequence::BVSequence;
pub use step::{Antiderivative, StepFunction};

use std::cmp::Ordering;

use num_traits::Signed;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::numbers::{parse_rational, Rational};

/// Which one-sided limit to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// Either instance kind accepted on the JSON surfaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Continuous(StepFunction),
    Discrete(BVSequence),
}

impl Instance {
    /// Dispatches on the presence of `"breakpoints"` or `"core"`.
    pub fn from_json_value(v: &Value) -> Result<Instance> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::malformed("$", "expected a JSON object"))?;
        if obj.contains_key("breakpoints") {
            Ok(Instance::Continuous(StepFunction::from_json_value(v)?))
        } else if obj.contains_key("core") {
            Ok(Instance::Discrete(BVSequence::from_json_value(v)?))
        } else {
            Err(Error::malformed(
                "$",
                "expected either \"breakpoints\"/\"values\" (step function) or \"offset\"/\"core\" (sequence)",
            ))
        }
    }

    pub fn from_json(s: &str) -> Result<Instance> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::malformed("$", e.to_string()))?;
        Self::from_json_value(&v)
    }

    pub fn to_json(&self) -> String {
        match self {
            Instance::Continuous(f) => f.to_json(),
            Instance::Discrete(g) => g.to_json(),
        }
    }

    pub fn to_json_value(&self) -> Value {
        match self {
            Instance::Continuous(f) => serde_json::to_value(f).expect("serializable"),
            Instance::Discrete(g) => serde_json::to_value(g).expect("serializable"),
        }
    }

    pub fn total_var(&self) -> Rational {
        match self {
            Instance::Continuous(f) => f.total_var(),
            Instance::Discrete(g) => g.total_var(),
        }
    }

    pub fn tails(&self) -> (&Rational, &Rational) {
        match self {
            Instance::Continuous(f) => (f.a(), f.b()),
            Instance::Discrete(g) => (g.a(), g.b()),
        }
    }

    pub fn is_alternating(&self) -> bool {
        match self {
            Instance::Continuous(f) => f.abs().normalize().is_alternating(),
            Instance::Discrete(g) => g.abs().normalize().is_alternating(),
        }
    }
}

/// A finite set of sample abscissae.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampleSet {
    Continuous(Vec<Rational>),
    Discrete(Vec<i64>),
}

impl SampleSet {
    pub fn continuous(points: Vec<Rational>) -> Result<SampleSet> {
        if points.is_empty() {
            return Err(Error::malformed("samples", "empty sample set"));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::malformed("samples", "sample points must be strictly increasing"));
        }
        Ok(SampleSet::Continuous(points))
    }

    pub fn discrete(points: Vec<i64>) -> Result<SampleSet> {
        if points.is_empty() {
            return Err(Error::malformed("samples", "empty sample set"));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::malformed("samples", "sample points must be strictly increasing"));
        }
        Ok(SampleSet::Discrete(points))
    }

    pub fn len(&self) -> usize {
        match self {
            SampleSet::Continuous(p) => p.len(),
            SampleSet::Discrete(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Variation of `g` over a finite sample set: the jump sum of the sampled
/// sequence, which is the supremum over monotone maps into the set.
pub fn var_over<F>(set: &SampleSet, mut evaluator: F) -> Result<Rational>
where
    F: FnMut(&Rational) -> Rational,
{
    if set.is_empty() {
        return Err(Error::malformed("samples", "empty sample set"));
    }
    let mut acc = Telescope::new();
    match set {
        SampleSet::Continuous(pts) => pts.iter().for_each(|x| acc.push(evaluator(x))),
        SampleSet::Discrete(pts) => pts
            .iter()
            .for_each(|&n| acc.push(evaluator(&Rational::from_integer(n.into())))),
    }
    Ok(acc.finish())
}

/// Jump sum of a finite sequence of values.
pub fn variation_of_values<'a, I>(values: I) -> Rational
where
    I: IntoIterator<Item = &'a Rational>,
{
    let mut acc = Telescope::new();
    for v in values {
        acc.push(v.clone());
    }
    acc.finish()
}

/// Streaming jump-sum accumulator. Monotone runs are telescoped so only the
/// turning points enter the exact sum.
#[derive(Debug, Clone)]
pub struct Telescope {
    total: Rational,
    run_start: Option<Rational>,
    last: Option<Rational>,
    direction: Ordering,
}

impl Default for Telescope {
    fn default() -> Self {
        Self::new()
    }
}

impl Telescope {
    pub fn new() -> Self {
        Telescope {
            total: Rational::from_integer(0.into()),
            run_start: None,
            last: None,
            direction: Ordering::Equal,
        }
    }

    pub fn push(&mut self, v: Rational) {
        let Some(last) = self.last.take() else {
            self.run_start = Some(v.clone());
            self.last = Some(v);
            return;
        };
        let step = v.cmp(&last);
        if step != Ordering::Equal {
            if self.direction != Ordering::Equal && step != self.direction {
                let start = self.run_start.take().expect("run start");
                self.total += (&last - &start).abs();
                self.run_start = Some(last.clone());
            }
            self.direction = step;
        }
        self.last = Some(v);
    }

    pub fn last(&self) -> Option<&Rational> {
        self.last.as_ref()
    }

    pub fn current(&self) -> Rational {
        match (&self.run_start, &self.last) {
            (Some(s), Some(l)) => &self.total + (l - s).abs(),
            _ => self.total.clone(),
        }
    }

    pub fn finish(self) -> Rational {
        self.current()
    }
}

pub(crate) fn field_rational(v: &Value, field: &str) -> Result<Rational> {
    match v.get(field) {
        None => Err(Error::malformed(field, "missing field")),
        Some(Value::String(s)) => parse_rational(s).map_err(|e| match e {
            Error::Malformed { reason, .. } => Error::malformed(field, reason),
            other => other,
        }),
        Some(Value::Number(n)) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        Some(_) => Err(Error::malformed(field, "expected a rational string such as \"3/2\"")),
    }
}

pub(crate) fn field_rational_list(v: &Value, field: &str) -> Result<Vec<Rational>> {
    let arr = match v.get(field) {
        None => return Err(Error::malformed(field, "missing field")),
        Some(Value::Array(a)) => a,
        Some(_) => return Err(Error::malformed(field, "expected an array of rational strings")),
    };
    arr.iter()
        .enumerate()
        .map(|(i, item)| {
            let path = format!("{field}[{i}]");
            match item {
                Value::String(s) => parse_rational(s).map_err(|e| match e {
                    Error::Malformed { reason, .. } => Error::malformed(path.clone(), reason),
                    other => other,
                }),
                Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
                _ => Err(Error::malformed(path, "expected a rational string such as \"3/2\"")),
            }
        })
        .collect()
}
