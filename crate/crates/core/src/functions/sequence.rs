use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::Value;

use super::{field_rational, field_rational_list};
use crate::error::{Error, Result};
use crate::numbers::rational::{serde_str, serde_vec};
use crate::numbers::Rational;

/// An eventually constant sequence: `a` below `offset`, the core on
/// `offset..offset+len`, `b` from there on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BVSequence {
    #[serde(with = "serde_str")]
    a: Rational,
    #[serde(with = "serde_str")]
    b: Rational,
    offset: i64,
    #[serde(with = "serde_vec")]
    core: Vec<Rational>,
}

impl BVSequence {
    pub fn new(a: Rational, b: Rational, offset: i64, core: Vec<Rational>) -> Self {
        BVSequence { a, b, offset, core }
    }

    pub fn constant(c: Rational) -> Self {
        BVSequence::new(c.clone(), c, 0, Vec::new())
    }

    /// `c·1_{n}`.
    pub fn delta(n: i64, c: Rational) -> Self {
        BVSequence::new(Rational::zero(), Rational::zero(), n, vec![c])
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let a = field_rational(v, "a")?;
        let b = field_rational(v, "b")?;
        let offset = match v.get("offset") {
            None => return Err(Error::malformed("offset", "missing field")),
            Some(o) => o
                .as_i64()
                .ok_or_else(|| Error::malformed("offset", "expected an integer"))?,
        };
        let core = field_rational_list(v, "core")?;
        Ok(BVSequence::new(a, b, offset, core))
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
    pub fn offset(&self) -> i64 {
        self.offset
    }
    pub fn core(&self) -> &[Rational] {
        &self.core
    }
    pub fn core_len(&self) -> i64 {
        self.core.len() as i64
    }
    /// One past the last core position.
    pub fn core_end(&self) -> i64 {
        self.offset + self.core_len()
    }

    pub fn value_at(&self, n: i64) -> &Rational {
        if n < self.offset {
            &self.a
        } else if n >= self.core_end() {
            &self.b
        } else {
            &self.core[(n - self.offset) as usize]
        }
    }

    /// Absorbs leading core values equal to `a` and trailing ones equal to `b`.
    pub fn normalize(&self) -> BVSequence {
        let mut start = 0;
        let mut end = self.core.len();
        while start < end && self.core[start] == self.a {
            start += 1;
        }
        while end > start && self.core[end - 1] == self.b {
            end -= 1;
        }
        let offset = if self.a == self.b && start == end {
            0
        } else {
            self.offset + start as i64
        };
        BVSequence {
            a: self.a.clone(),
            b: self.b.clone(),
            offset,
            core: self.core[start..end].to_vec(),
        }
    }

    pub fn is_constant(&self) -> bool {
        let n = self.normalize();
        n.core.is_empty() && n.a == n.b
    }

    pub fn total_var(&self) -> Rational {
        let mut total = Rational::zero();
        let mut prev = &self.a;
        for v in self.core.iter().chain(std::iter::once(&self.b)) {
            total += (v - prev).abs();
            prev = v;
        }
        total
    }

    /// Maximal runs of equal core values, as `(start, end_exclusive, value)`.
    pub fn runs(&self) -> Vec<(i64, i64, Rational)> {
        let mut out: Vec<(i64, i64, Rational)> = Vec::new();
        for (i, v) in self.core.iter().enumerate() {
            let n = self.offset + i as i64;
            match out.last_mut() {
                Some(last) if &last.2 == v => last.1 = n + 1,
                _ => out.push((n, n + 1, v.clone())),
            }
        }
        out
    }

    /// Separation condition on the runs of the core.
    pub fn is_alternating(&self) -> bool {
        self.runs()
            .windows(2)
            .all(|w| w[0].2.is_zero() || w[1].2.is_zero())
    }

    pub fn abs(&self) -> BVSequence {
        BVSequence {
            a: self.a.abs(),
            b: self.b.abs(),
            offset: self.offset,
            core: self.core.iter().map(|v| v.abs()).collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.a.is_negative() && !self.b.is_negative() && self.core.iter().all(|v| !v.is_negative())
    }

    pub fn scale(&self, c: &Rational) -> BVSequence {
        BVSequence {
            a: &self.a * c,
            b: &self.b * c,
            offset: self.offset,
            core: self.core.iter().map(|v| v * c).collect(),
        }
    }

    /// `n ↦ G(-n)`.
    pub fn reflect(&self) -> BVSequence {
        BVSequence {
            a: self.b.clone(),
            b: self.a.clone(),
            offset: -(self.core_end() - 1),
            core: self.core.iter().rev().cloned().collect(),
        }
    }

    /// Core widened to cover `lo..hi` (tail values filled in).
    pub fn widened(&self, lo: i64, hi: i64) -> BVSequence {
        let lo = lo.min(self.offset);
        let hi = hi.max(self.core_end());
        BVSequence {
            a: self.a.clone(),
            b: self.b.clone(),
            offset: lo,
            core: (lo..hi).map(|n| self.value_at(n).clone()).collect(),
        }
    }
}
