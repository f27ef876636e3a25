use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::Value;

use super::{field_rational, field_rational_list, Side};
use crate::error::{Error, Result};
use crate::numbers::rational::{serde_str, serde_vec};
use crate::numbers::Rational;

/// A step function on the line: `a` on `(-∞, t₀)`, `αₖ` on `[tₖ₋₁, tₖ)`,
/// `b` on `[t_K, ∞)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StepFunction {
    #[serde(with = "serde_str")]
    a: Rational,
    #[serde(with = "serde_str")]
    b: Rational,
    #[serde(with = "serde_vec")]
    breakpoints: Vec<Rational>,
    #[serde(with = "serde_vec")]
    values: Vec<Rational>,
}

impl StepFunction {
    pub fn new(a: Rational, b: Rational, breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self> {
        if breakpoints.is_empty() {
            return Err(Error::malformed("breakpoints", "at least one breakpoint is required"));
        }
        if breakpoints.len() != values.len() + 1 {
            return Err(Error::malformed(
                "values",
                format!(
                    "expected {} piece values for {} breakpoints, found {}",
                    breakpoints.len() - 1,
                    breakpoints.len(),
                    values.len()
                ),
            ));
        }
        if let Some(i) = breakpoints.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::malformed(
                format!("breakpoints[{}]", i + 1),
                "breakpoints must be strictly increasing",
            ));
        }
        Ok(StepFunction {
            a,
            b,
            breakpoints,
            values,
        })
    }

    /// `a` on `(-∞, t)` and `b` on `[t, ∞)`.
    pub fn two_tails(a: Rational, b: Rational, t: Rational) -> Self {
        StepFunction {
            a,
            b,
            breakpoints: vec![t],
            values: Vec::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::two_tails(c.clone(), c, Rational::zero())
    }

    /// `c·1_[l, r)`.
    pub fn indicator(l: Rational, r: Rational, c: Rational) -> Result<Self> {
        Self::new(Rational::zero(), Rational::zero(), vec![l, r], vec![c])
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let a = field_rational(v, "a")?;
        let b = field_rational(v, "b")?;
        let breakpoints = field_rational_list(v, "breakpoints")?;
        let values = field_rational_list(v, "values")?;
        Self::new(a, b, breakpoints, values)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }
    pub fn b(&self) -> &Rational {
        &self.b
    }
    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }
    pub fn values(&self) -> &[Rational] {
        &self.values
    }
    /// Number of pieces `K`.
    pub fn pieces(&self) -> usize {
        self.values.len()
    }

    /// Value on the cell with index `k`: `-1` is the left tail, `K` the right tail.
    pub fn cell_value(&self, k: isize) -> &Rational {
        if k < 0 {
            &self.a
        } else if k as usize >= self.values.len() {
            &self.b
        } else {
            &self.values[k as usize]
        }
    }

    /// Index of the cell containing `x` under the half-open convention.
    pub fn cell_of(&self, x: &Rational) -> isize {
        self.breakpoints.partition_point(|t| t <= x) as isize - 1
    }

    pub fn value_at(&self, x: &Rational) -> Rational {
        self.cell_value(self.cell_of(x)).clone()
    }

    pub fn one_sided_value(&self, x: &Rational, side: Side) -> Rational {
        match side {
            Side::Right => self.value_at(x),
            Side::Left => {
                let k = self.breakpoints.partition_point(|t| t < x) as isize - 1;
                self.cell_value(k).clone()
            }
        }
    }

    /// Merges equal neighbouring cells, tails included. Idempotent.
    pub fn normalize(&self) -> StepFunction {
        // (start, value) runs; the first run starts at -∞
        let mut runs: Vec<(Option<Rational>, Rational)> = vec![(None, self.a.clone())];
        let cells = self
            .breakpoints
            .iter()
            .zip(self.values.iter().chain(std::iter::once(&self.b)));
        for (t, v) in cells {
            if &runs.last().unwrap().1 != v {
                runs.push((Some(t.clone()), v.clone()));
            }
        }
        if runs.len() == 1 {
            return StepFunction {
                a: self.a.clone(),
                b: self.a.clone(),
                breakpoints: vec![self.breakpoints[0].clone()],
                values: Vec::new(),
            };
        }
        let a = runs[0].1.clone();
        let b = runs.last().unwrap().1.clone();
        let breakpoints = runs[1..].iter().map(|(t, _)| t.clone().unwrap()).collect();
        let values = runs[1..runs.len() - 1].iter().map(|(_, v)| v.clone()).collect();
        StepFunction {
            a,
            b,
            breakpoints,
            values,
        }
    }

    pub fn is_constant(&self) -> bool {
        let n = self.normalize();
        n.values.is_empty() && n.a == n.b
    }

    /// Sum of jump magnitudes, tails included.
    pub fn total_var(&self) -> Rational {
        let mut total = Rational::zero();
        let mut prev = &self.a;
        for v in self.values.iter().chain(std::iter::once(&self.b)) {
            total += (v - prev).abs();
            prev = v;
        }
        total
    }

    /// Separation condition: adjacent piece values have product zero.
    pub fn is_alternating(&self) -> bool {
        self.values
            .windows(2)
            .all(|w| w[0].is_zero() || w[1].is_zero())
    }

    pub fn abs(&self) -> StepFunction {
        StepFunction {
            a: self.a.abs(),
            b: self.b.abs(),
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| v.abs()).collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.a.is_negative() && !self.b.is_negative() && self.values.iter().all(|v| !v.is_negative())
    }

    pub fn scale(&self, c: &Rational) -> StepFunction {
        StepFunction {
            a: &self.a * c,
            b: &self.b * c,
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// `x ↦ f(-x)`, up to the values on the (null) breakpoint set.
    pub fn reflect(&self) -> StepFunction {
        StepFunction {
            a: self.b.clone(),
            b: self.a.clone(),
            breakpoints: self.breakpoints.iter().rev().map(|t| -t).collect(),
            values: self.values.iter().rev().cloned().collect(),
        }
    }

    /// `x ↦ f(x - h)`.
    pub fn shift(&self, h: &Rational) -> StepFunction {
        StepFunction {
            a: self.a.clone(),
            b: self.b.clone(),
            breakpoints: self.breakpoints.iter().map(|t| t + h).collect(),
            values: self.values.clone(),
        }
    }

    /// `∫_{t₀}^{tₖ} f` for every breakpoint.
    pub fn prefix_integrals(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.breakpoints.len());
        let mut acc = Rational::zero();
        out.push(acc.clone());
        for (k, v) in self.values.iter().enumerate() {
            acc += v * (&self.breakpoints[k + 1] - &self.breakpoints[k]);
            out.push(acc.clone());
        }
        out
    }
}

/// `y ↦ ∫_{t₀}^{y} f` evaluated exactly.
#[derive(Clone, Debug)]
pub struct Antiderivative<'a> {
    f: &'a StepFunction,
    prefix: Vec<Rational>,
}

impl<'a> Antiderivative<'a> {
    pub fn new(f: &'a StepFunction) -> Self {
        Antiderivative {
            f,
            prefix: f.prefix_integrals(),
        }
    }

    /// Cell `k` in the sense of [`StepFunction::cell_value`] and the affine
    /// form `F(y) = base + slope·(y − anchor)` valid on it.
    pub fn affine_on_cell(&self, k: isize) -> (&Rational, &Rational, &Rational) {
        let bp = &self.f.breakpoints;
        if k < 0 {
            (&self.prefix[0], &self.f.a, &bp[0])
        } else {
            let k = k as usize;
            (&self.prefix[k], self.f.cell_value(k as isize), &bp[k])
        }
    }

    pub fn at(&self, y: &Rational) -> Rational {
        let k = self.f.cell_of(y);
        let (base, slope, anchor) = self.affine_on_cell(k);
        base + slope * (y - anchor)
    }

    pub fn integral(&self, from: &Rational, to: &Rational) -> Rational {
        self.at(to) - self.at(from)
    }
}
