//! Linear-fractional curves `(p·x + q)/(r·x + s)` with rational coefficients.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::numbers::rational::serde_str;
use crate::numbers::{Poly2, QuadraticValue, Rational, Sign};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MobiusPiece {
    #[serde(with = "serde_str")]
    p: Rational,
    #[serde(with = "serde_str")]
    q: Rational,
    #[serde(with = "serde_str")]
    r: Rational,
    #[serde(with = "serde_str")]
    s: Rational,
}

impl MobiusPiece {
    /// Builds the curve, collapsing it to a constant when numerator and
    /// denominator are proportional.
    pub fn new(p: Rational, q: Rational, r: Rational, s: Rational) -> Self {
        assert!(!(r.is_zero() && s.is_zero()), "zero denominator");
        if &p * &s == &q * &r {
            let c = if !r.is_zero() { &p / &r } else { &q / &s };
            return Self::constant(c);
        }
        MobiusPiece { p, q, r, s }
    }

    pub fn constant(c: Rational) -> Self {
        MobiusPiece {
            p: Rational::zero(),
            q: c,
            r: Rational::zero(),
            s: Rational::one(),
        }
    }

    pub fn coefficients(&self) -> (&Rational, &Rational, &Rational, &Rational) {
        (&self.p, &self.q, &self.r, &self.s)
    }

    pub fn is_constant(&self) -> bool {
        self.p.is_zero() && self.r.is_zero()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(&self.q / &self.s)
        } else {
            None
        }
    }

    pub fn numerator_at(&self, x: &Rational) -> Rational {
        &self.p * x + &self.q
    }

    pub fn denominator_at(&self, x: &Rational) -> Rational {
        &self.r * x + &self.s
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let den = self.denominator_at(x);
        if den.is_zero() {
            None
        } else {
            Some(self.numerator_at(x) / den)
        }
    }

    pub fn eval_q(&self, x: &QuadraticValue) -> Option<QuadraticValue> {
        if let Some(r) = x.as_rational() {
            return self.eval(r).map(QuadraticValue::rational);
        }
        let num = x.mul_rational(&self.p).add_rational(&self.q);
        let den = x.mul_rational(&self.r).add_rational(&self.s);
        let inv = den.recip()?;
        num.try_mul(&inv)
    }

    /// Limit as `x → ±∞`; `None` if the curve is unbounded there.
    pub fn limit_at_infinity(&self) -> Option<Rational> {
        if !self.r.is_zero() {
            Some(&self.p / &self.r)
        } else if self.p.is_zero() {
            Some(&self.q / &self.s)
        } else {
            None
        }
    }

    /// Sign of the derivative wherever the curve is defined.
    pub fn slope_sign(&self) -> Sign {
        Sign::of_rational(&(&self.p * &self.s - &self.q * &self.r))
    }

    /// `num(self)·den(other) − num(other)·den(self)`. Where both denominators
    /// are positive its sign is the sign of `self − other`.
    pub fn cross(&self, other: &MobiusPiece) -> Poly2 {
        // (p1 x + q1)(r2 x + s2) − (p2 x + q2)(r1 x + s1)
        let c2 = &self.p * &other.r - &other.p * &self.r;
        let c1 = &self.p * &other.s + &self.q * &other.r - &other.p * &self.s - &other.q * &self.r;
        let c0 = &self.q * &other.s - &other.q * &self.s;
        Poly2::new(c2, c1, c0)
    }

    /// Same curve with the denominator made positive at `x`.
    pub fn with_positive_denominator_at(self, x: &Rational) -> Self {
        if Sign::of_rational(&self.denominator_at(x)) == Sign::Negative {
            MobiusPiece {
                p: -self.p,
                q: -self.q,
                r: -self.r,
                s: -self.s,
            }
        } else {
            self
        }
    }

    /// `x ↦ self(-x)`.
    pub fn reflect(&self) -> Self {
        MobiusPiece {
            p: -&self.p,
            q: self.q.clone(),
            r: -&self.r,
            s: self.s.clone(),
        }
    }
}
