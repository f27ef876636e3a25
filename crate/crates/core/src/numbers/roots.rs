//! Quadratic polynomials with rational coefficients: exact roots, germ signs
//! and rational isolating intervals.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::quadratic::QuadraticValue;
use super::rational::{self, pow2, Rational, Sign};
use crate::error::{Error, Result};

/// `c2·x² + c1·x + c0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly2 {
    pub c2: Rational,
    pub c1: Rational,
    pub c0: Rational,
}

impl Poly2 {
    pub fn new(c2: Rational, c1: Rational, c0: Rational) -> Self {
        Poly2 { c2, c1, c0 }
    }

    pub fn is_zero(&self) -> bool {
        self.c2.is_zero() && self.c1.is_zero() && self.c0.is_zero()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        (&self.c2 * x + &self.c1) * x + &self.c0
    }

    pub fn eval_q(&self, x: &QuadraticValue) -> QuadraticValue {
        if let Some(r) = x.as_rational() {
            return QuadraticValue::rational(self.eval(r));
        }
        let x2 = x.try_mul(x).expect("same field");
        x2.mul_rational(&self.c2)
            .try_add(&x.mul_rational(&self.c1))
            .expect("same field")
            .add_rational(&self.c0)
    }

    pub fn derivative(&self) -> Poly2 {
        Poly2::new(
            Rational::zero(),
            &self.c2 * Rational::from_integer(BigInt::from(2)),
            self.c1.clone(),
        )
    }

    /// Sign of the polynomial on a right neighbourhood of `x`.
    pub fn sign_right_of(&self, x: &QuadraticValue) -> Sign {
        let v = self.eval_q(x).sign();
        if v != Sign::Zero {
            return v;
        }
        let d = self.derivative().eval_q(x).sign();
        if d != Sign::Zero {
            return d;
        }
        Sign::of_rational(&self.c2)
    }

    /// Sign of the polynomial on a left neighbourhood of `x`.
    pub fn sign_left_of(&self, x: &QuadraticValue) -> Sign {
        let v = self.eval_q(x).sign();
        if v != Sign::Zero {
            return v;
        }
        let d = self.derivative().eval_q(x).sign().neg();
        if d != Sign::Zero {
            return d;
        }
        Sign::of_rational(&self.c2)
    }

    /// Sign for all sufficiently negative `x`.
    pub fn sign_at_neg_infinity(&self) -> Sign {
        if !self.c2.is_zero() {
            Sign::of_rational(&self.c2)
        } else if !self.c1.is_zero() {
            Sign::of_rational(&self.c1).neg()
        } else {
            Sign::of_rational(&self.c0)
        }
    }

    /// Sign for all sufficiently positive `x`.
    pub fn sign_at_pos_infinity(&self) -> Sign {
        if !self.c2.is_zero() {
            Sign::of_rational(&self.c2)
        } else if !self.c1.is_zero() {
            Sign::of_rational(&self.c1)
        } else {
            Sign::of_rational(&self.c0)
        }
    }

    /// Distinct real roots in increasing order. The zero polynomial has none.
    pub fn real_roots(&self) -> Vec<QuadraticValue> {
        if self.c2.is_zero() {
            if self.c1.is_zero() {
                return Vec::new();
            }
            return vec![QuadraticValue::rational(-&self.c0 / &self.c1)];
        }
        let two_a = &self.c2 * Rational::from_integer(BigInt::from(2));
        let disc = &self.c1 * &self.c1 - Rational::from_integer(BigInt::from(4)) * &self.c2 * &self.c0;
        if disc.is_negative() {
            return Vec::new();
        }
        let center = -&self.c1 / &two_a;
        if disc.is_zero() {
            return vec![QuadraticValue::rational(center)];
        }
        let step = Rational::from_integer(BigInt::from(1)) / &two_a;
        let r1 = QuadraticValue::new(center.clone(), -&step, disc.clone());
        let r2 = QuadraticValue::new(center, step, disc);
        if r1 == r2 {
            return vec![r1];
        }
        match r1.cmp_exact(&r2) {
            Ordering::Less => vec![r1, r2],
            _ => vec![r2, r1],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootIndex {
    Smaller,
    Larger,
}

/// One real root of `A·x² + B·x + C` with a rational isolating interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDescriptor {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub index: RootIndex,
    pub lo: Rational,
    pub hi: Rational,
    pub value: QuadraticValue,
}

impl RootDescriptor {
    fn poly(&self) -> Poly2 {
        Poly2::new(self.a.clone(), self.b.clone(), self.c.clone())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Bisects the isolating interval until its width is at most `width`.
    pub fn refine(&self, width: &Rational) -> RootDescriptor {
        let mut out = self.clone();
        if out.lo == out.hi {
            return out;
        }
        let p = self.poly();
        let two = Rational::from_integer(BigInt::from(2));
        let s_lo = Sign::of_rational(&p.eval(&out.lo));
        while &out.width() > width {
            let mid = (&out.lo + &out.hi) / &two;
            let s_mid = Sign::of_rational(&p.eval(&mid));
            if s_mid == Sign::Zero {
                out.lo = mid.clone();
                out.hi = mid;
                break;
            }
            if s_mid == s_lo {
                out.lo = mid;
            } else {
                out.hi = mid;
            }
        }
        out
    }
}

/// Isolates the distinct real roots of `A·x² + B·x + C`.
pub fn isolate_roots(a: &Rational, b: &Rational, c: &Rational) -> Result<Vec<RootDescriptor>> {
    let p = Poly2::new(a.clone(), b.clone(), c.clone());
    if p.is_zero() {
        return Err(Error::Degenerate("all-zero quadratic coefficients".into()));
    }
    let roots = p.real_roots();
    let mut out = Vec::with_capacity(roots.len());
    for (i, r) in roots.iter().enumerate() {
        let index = if i == 0 { RootIndex::Smaller } else { RootIndex::Larger };
        let (lo, hi) = match r.as_rational() {
            Some(x) => (x.clone(), x.clone()),
            None => {
                let other = roots.get(1 - i);
                isolate_irrational(r, other)
            }
        };
        out.push(RootDescriptor {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            index,
            lo,
            hi,
            value: r.clone(),
        });
    }
    Ok(out)
}

/// Dyadic interval `[j/2^k, (j+1)/2^k]` around `x`, for the smallest `k ≥ 1`
/// that excludes `other`.
fn isolate_irrational(x: &QuadraticValue, other: Option<&QuadraticValue>) -> (Rational, Rational) {
    let mut k: i64 = 1;
    loop {
        let h = pow2(-k);
        let scaled = x.mul_rational(&pow2(k));
        let j = floor_of(&scaled);
        let lo = Rational::from_integer(j) * &h;
        let hi = &lo + &h;
        let clear = match other {
            None => true,
            Some(o) => o.cmp_rational(&lo) == Ordering::Less || o.cmp_rational(&hi) == Ordering::Greater,
        };
        if clear {
            return (lo, hi);
        }
        k += 1;
    }
}

/// Floor of an irrational quadratic value.
fn floor_of(x: &QuadraticValue) -> BigInt {
    let mut bits = 16;
    loop {
        let (lo, hi) = x.enclosure(bits);
        let fl = rational::floor(&lo);
        if fl == rational::floor(&hi) {
            return fl;
        }
        bits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rational::{int, rat};

    #[test]
    fn sqrt2_isolation() {
        let roots = isolate_roots(&int(1), &int(0), &int(-2)).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!((roots[0].lo.clone(), roots[0].hi.clone()), (rat(-3, 2), int(-1)));
        assert_eq!((roots[1].lo.clone(), roots[1].hi.clone()), (int(1), rat(3, 2)));
        assert_eq!(roots[0].index, RootIndex::Smaller);
    }

    #[test]
    fn linear_case() {
        let roots = isolate_roots(&int(0), &int(2), &int(-1)).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].lo, rat(1, 2));
        assert_eq!(roots[0].hi, rat(1, 2));
    }

    #[test]
    fn no_real_roots_and_degenerate() {
        assert!(isolate_roots(&int(1), &int(0), &int(1)).unwrap().is_empty());
        assert!(isolate_roots(&int(0), &int(0), &int(0)).is_err());
        assert!(isolate_roots(&int(0), &int(0), &int(3)).unwrap().is_empty());
    }

    #[test]
    fn close_roots_get_separated() {
        // roots 1 ± 1/1000·√2
        let a = int(1);
        let b = int(-2);
        let c = int(1) - rat(2, 1_000_000);
        let roots = isolate_roots(&a, &b, &c).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].hi <= roots[1].lo);
    }

    #[test]
    fn refine_keeps_root() {
        let roots = isolate_roots(&int(1), &int(0), &int(-2)).unwrap();
        let r = roots[1].refine(&rat(1, 1 << 20));
        assert!(r.width() <= rat(1, 1 << 20));
        assert_eq!(r.value.cmp_rational(&r.lo), Ordering::Greater);
        assert_eq!(r.value.cmp_rational(&r.hi), Ordering::Less);
    }

    #[test]
    fn germ_signs() {
        // (x-1)^2: zero at 1 but positive on both sides
        let p = Poly2::new(int(1), int(-2), int(1));
        let one = QuadraticValue::rational(int(1));
        assert_eq!(p.sign_right_of(&one), Sign::Positive);
        assert_eq!(p.sign_left_of(&one), Sign::Positive);
        let q = Poly2::new(int(0), int(1), int(-1));
        assert_eq!(q.sign_left_of(&one), Sign::Negative);
        assert_eq!(q.sign_at_neg_infinity(), Sign::Negative);
    }
}
