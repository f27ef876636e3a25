//! Values of the form `p + q·√d` with rational `p`, `q` and `d ≥ 0`, and
//! finite sums of such values across different radicands.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{self, Rational, Sign};

const SMALL_PRIMES: [u32; 54] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251,
];

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &s * &s == *n {
        Some(s)
    } else {
        None
    }
}

/// Splits `n > 0` as `c² · r`, pulling out every square factor built from
/// small primes and the whole of `n` when it is a perfect square.
fn extract_square(n: &BigInt) -> (BigInt, BigInt) {
    if let Some(s) = exact_sqrt(n) {
        return (s, BigInt::one());
    }
    let mut r = n.clone();
    let mut c = BigInt::one();
    for &p in SMALL_PRIMES.iter() {
        let p = BigInt::from(p);
        let p2 = &p * &p;
        if p2 > r {
            break;
        }
        while (&r % &p2).is_zero() {
            r /= &p2;
            c *= &p;
        }
    }
    if let Some(s) = exact_sqrt(&r) {
        c *= s;
        r = BigInt::one();
    }
    (c, r)
}

/// `p + q·√d`. The radicand is kept as an integer greater than one with its
/// small square factors extracted; rational values carry `q = 0, d = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticValue {
    p: Rational,
    q: Rational,
    d: Rational,
}

impl QuadraticValue {
    pub fn new(p: Rational, q: Rational, d: Rational) -> Self {
        assert!(!d.is_negative(), "negative radicand");
        if q.is_zero() || d.is_zero() {
            return Self::rational(p);
        }
        // √(n/m) = √(n·m)/m
        let n = d.numer() * d.denom();
        let q = q / Rational::from_integer(d.denom().clone());
        let (c, r) = extract_square(&n);
        let q = q * Rational::from_integer(c);
        if r.is_one() {
            Self::rational(p + q)
        } else {
            QuadraticValue {
                p,
                q,
                d: Rational::from_integer(r),
            }
        }
    }

    pub fn rational(p: Rational) -> Self {
        QuadraticValue {
            p,
            q: Rational::zero(),
            d: Rational::zero(),
        }
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }
    pub fn q(&self) -> &Rational {
        &self.q
    }
    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.p)
        } else {
            None
        }
    }

    fn radicand(&self) -> &BigInt {
        self.d.numer()
    }

    /// Exact sign (the `quad_sign` operation).
    pub fn sign(&self) -> Sign {
        quad_sign(&self.p, &self.q, &self.d)
    }

    pub fn neg(&self) -> Self {
        QuadraticValue {
            p: -&self.p,
            q: -&self.q,
            d: self.d.clone(),
        }
    }

    /// Rewrites `self` over radicand `d` if the two fields coincide.
    fn in_field(&self, d: &Rational) -> Option<(Rational, Rational)> {
        if self.is_rational() {
            return Some((self.p.clone(), Rational::zero()));
        }
        if &self.d == d {
            return Some((self.p.clone(), self.q.clone()));
        }
        if d.is_zero() {
            return None;
        }
        let prod = self.radicand() * d.numer();
        let s = exact_sqrt(&prod)?;
        // √self.d = s / √d = (s/d)·√d
        let factor = Rational::from_integer(s) / d;
        Some((self.p.clone(), &self.q * factor))
    }

    /// Common radicand of two values, if they live in the same quadratic field.
    fn common_field(&self, other: &Self) -> Option<(Rational, (Rational, Rational), (Rational, Rational))> {
        let d = if self.is_rational() { other.d.clone() } else { self.d.clone() };
        let a = self.in_field(&d)?;
        let b = other.in_field(&d)?;
        Some((d, a, b))
    }

    pub fn try_add(&self, other: &Self) -> Option<Self> {
        let (d, (p1, q1), (p2, q2)) = self.common_field(other)?;
        Some(QuadraticValue::new(p1 + p2, q1 + q2, d))
    }

    pub fn try_mul(&self, other: &Self) -> Option<Self> {
        let (d, (p1, q1), (p2, q2)) = self.common_field(other)?;
        let p = &p1 * &p2 + &q1 * &q2 * &d;
        let q = &p1 * &q2 + &q1 * &p2;
        Some(QuadraticValue::new(p, q, d))
    }

    /// `1/self`; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        let norm = &self.p * &self.p - &self.q * &self.q * &self.d;
        if norm.is_zero() {
            return None;
        }
        Some(QuadraticValue::new(&self.p / &norm, -&self.q / &norm, self.d.clone()))
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        QuadraticValue {
            p: &self.p + r,
            q: self.q.clone(),
            d: self.d.clone(),
        }
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::rational(Rational::zero());
        }
        QuadraticValue {
            p: &self.p * r,
            q: &self.q * r,
            d: self.d.clone(),
        }
    }

    /// `self − other` as an exact sum; valid across fields.
    pub fn minus(&self, other: &Self) -> RadicalSum {
        let mut s = RadicalSum::from(self);
        s.sub_value(other);
        s
    }

    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        if let Some((d, (p1, q1), (p2, q2))) = self.common_field(other) {
            return quad_sign(&(p1 - p2), &(q1 - q2), &d).to_ordering();
        }
        self.minus(other).sign().to_ordering()
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        quad_sign(&(&self.p - r), &self.q, &self.d).to_ordering()
    }

    pub fn to_f64(&self) -> f64 {
        RadicalSum::from(self).to_f64()
    }

    /// Rational enclosure `[lo, hi]` with radicands resolved to `bits` binary digits.
    pub fn enclosure(&self, bits: u32) -> (Rational, Rational) {
        RadicalSum::from(self).enclosure(bits)
    }

    pub fn floor_bound(&self) -> BigInt {
        rational::floor(&self.enclosure(8).0)
    }

    pub fn ceil_bound(&self) -> BigInt {
        rational::ceil(&self.enclosure(8).1)
    }
}

impl From<Rational> for QuadraticValue {
    fn from(r: Rational) -> Self {
        QuadraticValue::rational(r)
    }
}

impl From<&Rational> for QuadraticValue {
    fn from(r: &Rational) -> Self {
        QuadraticValue::rational(r.clone())
    }
}

impl fmt::Display for QuadraticValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        RadicalSum::from(self).fmt(f)
    }
}

impl PartialOrd for QuadraticValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_exact(other))
    }
}

/// Exact sign of `p + q√d` from the signs of `p`, `q` and the comparison of
/// `p²` with `q²·d`.
pub fn quad_sign(p: &Rational, q: &Rational, d: &Rational) -> Sign {
    let sp = Sign::of_rational(p);
    let sq = if d.is_zero() { Sign::Zero } else { Sign::of_rational(q) };
    match (sp, sq) {
        (_, Sign::Zero) => sp,
        (Sign::Zero, _) => sq,
        (a, b) if a == b => a,
        _ => match (p * p).cmp(&(q * q * d)) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => Sign::Zero,
        },
    }
}

/// `r + Σ cᵢ·√nᵢ` with pairwise independent integer radicands `nᵢ > 1`.
///
/// Terms whose radicands differ by a rational square factor are merged on
/// insertion, so the remaining square roots are linearly independent over
/// the rationals and the sum is zero exactly when every coefficient is.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RadicalSum {
    rational: Rational,
    terms: Vec<(BigInt, Rational)>,
}

impl RadicalSum {
    pub fn zero() -> Self {
        RadicalSum {
            rational: Rational::zero(),
            terms: Vec::new(),
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn terms(&self) -> &[(BigInt, Rational)] {
        &self.terms
    }

    pub fn is_rational(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.terms.is_empty() {
            Some(&self.rational)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.rational.is_zero()
    }

    fn add_term(&mut self, radicand: &BigInt, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        for i in 0..self.terms.len() {
            let r = &self.terms[i].0;
            if r == radicand {
                self.terms[i].1 += coef;
                if self.terms[i].1.is_zero() {
                    self.terms.remove(i);
                }
                return;
            }
            if let Some(s) = exact_sqrt(&(r * radicand)) {
                let factor = Rational::new(s, r.clone());
                self.terms[i].1 += coef * factor;
                if self.terms[i].1.is_zero() {
                    self.terms.remove(i);
                }
                return;
            }
        }
        let pos = self.terms.partition_point(|(r, _)| r < radicand);
        self.terms.insert(pos, (radicand.clone(), coef));
    }

    pub fn add_rational(&mut self, r: &Rational) {
        self.rational += r;
    }

    pub fn add_value(&mut self, v: &QuadraticValue) {
        self.rational += &v.p;
        if !v.is_rational() {
            self.add_term(v.radicand(), v.q.clone());
        }
    }

    pub fn sub_value(&mut self, v: &QuadraticValue) {
        self.add_value(&v.neg());
    }

    pub fn add_sum(&mut self, other: &RadicalSum) {
        self.rational += &other.rational;
        for (r, c) in &other.terms {
            self.add_term(r, c.clone());
        }
    }

    pub fn sub_sum(&mut self, other: &RadicalSum) {
        self.add_sum(&other.neg());
    }

    pub fn neg(&self) -> RadicalSum {
        RadicalSum {
            rational: -&self.rational,
            terms: self.terms.iter().map(|(r, c)| (r.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> RadicalSum {
        if k.is_zero() {
            return RadicalSum::zero();
        }
        RadicalSum {
            rational: &self.rational * k,
            terms: self.terms.iter().map(|(r, c)| (r.clone(), c * k)).collect(),
        }
    }

    pub fn abs(&self) -> RadicalSum {
        if self.sign() == Sign::Negative {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact sign. One or two radicals are decided algebraically; longer sums
    /// are decided by refining certified enclosures, which terminates because
    /// a nonzero combination of independent square roots is never zero.
    pub fn sign(&self) -> Sign {
        match self.terms.len() {
            0 => Sign::of_rational(&self.rational),
            1 => {
                let (r, c) = &self.terms[0];
                quad_sign(&self.rational, c, &Rational::from_integer(r.clone()))
            }
            2 => self.sign_two_radicals(),
            _ => {
                let mut bits = 64;
                loop {
                    let (lo, hi) = self.enclosure(bits);
                    if lo.is_positive() {
                        return Sign::Positive;
                    }
                    if hi.is_negative() {
                        return Sign::Negative;
                    }
                    bits *= 2;
                }
            }
        }
    }

    /// `x + y` with `x = r + c₁√n₁`, `y = c₂√n₂`: compare `x²` with `y²` when
    /// the signs disagree.
    fn sign_two_radicals(&self) -> Sign {
        let (n1, c1) = &self.terms[0];
        let (n2, c2) = &self.terms[1];
        let d1 = Rational::from_integer(n1.clone());
        let d2 = Rational::from_integer(n2.clone());
        let sx = quad_sign(&self.rational, c1, &d1);
        let sy = Sign::of_rational(c2);
        if sx == Sign::Zero {
            return sy;
        }
        if sy == Sign::Zero || sx == sy {
            return sx;
        }
        // x² − y² = (r² + c₁²n₁ − c₂²n₂) + 2rc₁√n₁
        let p = &self.rational * &self.rational + c1 * c1 * &d1 - c2 * c2 * &d2;
        let q = Rational::from_integer(BigInt::from(2)) * &self.rational * c1;
        match quad_sign(&p, &q, &d1) {
            Sign::Positive => sx,
            Sign::Negative => sy,
            Sign::Zero => Sign::Zero,
        }
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        let mut d = self.clone();
        d.add_rational(&-r);
        d.sign().to_ordering()
    }

    pub fn cmp_sum(&self, other: &RadicalSum) -> Ordering {
        let mut d = self.clone();
        d.sub_sum(other);
        d.sign().to_ordering()
    }

    /// Certified rational enclosure with each √n resolved to `bits` binary digits.
    pub fn enclosure(&self, bits: u32) -> (Rational, Rational) {
        let mut lo = self.rational.clone();
        let mut hi = self.rational.clone();
        let scale = BigInt::one() << (2 * bits as usize);
        let denom = BigInt::one() << bits as usize;
        for (n, c) in &self.terms {
            let s = (n * &scale).sqrt();
            let exact = &s * &s == n * &scale;
            let root_lo = Rational::new(s.clone(), denom.clone());
            let root_hi = if exact {
                root_lo.clone()
            } else {
                Rational::new(s + 1, denom.clone())
            };
            if c.is_positive() {
                lo += c * &root_lo;
                hi += c * &root_hi;
            } else {
                lo += c * &root_hi;
                hi += c * &root_lo;
            }
        }
        (lo, hi)
    }

    pub fn to_f64(&self) -> f64 {
        if self.terms.is_empty() {
            return rational::to_f64(&self.rational);
        }
        let (lo, hi) = self.enclosure(64);
        rational::to_f64(&((lo + hi) / Rational::from_integer(BigInt::from(2))))
    }

    /// Decimal approximation with `digits` significant digits, from an
    /// enclosure tight enough that the printed digits are stable.
    pub fn to_decimal(&self, digits: usize) -> String {
        if let Some(r) = self.as_rational() {
            return rational::to_decimal(r, digits);
        }
        let bits = (digits as u32) * 4 + 64;
        let (lo, hi) = self.enclosure(bits);
        rational::to_decimal(&((lo + hi) / Rational::from_integer(BigInt::from(2))), digits)
    }
}

impl From<&QuadraticValue> for RadicalSum {
    fn from(v: &QuadraticValue) -> Self {
        let mut s = RadicalSum::zero();
        s.add_value(v);
        s
    }
}

impl From<Rational> for RadicalSum {
    fn from(r: Rational) -> Self {
        RadicalSum {
            rational: r,
            terms: Vec::new(),
        }
    }
}

impl fmt::Display for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if !self.rational.is_zero() || self.terms.is_empty() {
            out.push_str(&rational::format_rational(&self.rational));
        }
        for (n, c) in &self.terms {
            let mag = c.abs();
            if c.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if !mag.is_one() {
                out.push_str(&rational::format_rational(&mag));
                out.push('*');
            }
            out.push_str(&format!("sqrt({n})"));
        }
        f.write_str(&out)
    }
}
