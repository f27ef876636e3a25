//! Maximal operators on eventually-constant sequences.
//!
//! Every window average is `S/w` with `S` an integer after scaling the
//! sequence by the common denominator of its values, so the inner loops run
//! on machine integers when the instance is small enough and fall back to
//! big integers otherwise.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::Variant;
use crate::functions::{BVSequence, Side};
use crate::mobius::MobiusPiece;
use crate::numbers::{int, rational, Rational};

/// Inclusive index window `lo..=hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DiscreteWindow {
    pub lo: i64,
    pub hi: i64,
}

impl DiscreteWindow {
    pub fn len(&self) -> i64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A maximal-function value together with its smallest maximizing window;
/// `window` is `None` when the supremum is only approached in a limit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscreteValue {
    #[serde(with = "crate::numbers::rational::serde_str")]
    pub value: Rational,
    pub window: Option<DiscreteWindow>,
}

/// Curve giving the maximal function beyond the core for windows anchored
/// at `anchor`; valid for `n >= boundary` (right side) or `n <= boundary`
/// (left side). Constant candidates have no anchor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TailCandidate {
    pub side: Side,
    pub anchor: Option<i64>,
    pub curve: MobiusPiece,
    pub boundary: i64,
}

impl TailCandidate {
    pub fn value_at(&self, n: i64) -> Rational {
        self.curve
            .eval(&int(n))
            .expect("tail candidate evaluated on its half-line")
    }

    pub fn is_valid_at(&self, n: i64) -> bool {
        match self.side {
            Side::Left => n <= self.boundary,
            Side::Right => n >= self.boundary,
        }
    }
}

pub fn m_discrete_at(g: &BVSequence, n: i64, variant: Variant) -> Rational {
    m_discrete_eval(g, n, variant).value
}

pub fn m_discrete_eval(g: &BVSequence, n: i64, variant: Variant) -> DiscreteValue {
    let k = AnyKernel::new(g, n.abs());
    dispatch!(k, k => {
        let (v, w) = k.eval(n, variant);
        DiscreteValue { value: v.to_rational(&k.scale), window: w }
    })
}

/// Values of the maximal function at every `n` in `lo..=hi`.
pub fn m_discrete_values(g: &BVSequence, lo: i64, hi: i64, variant: Variant) -> Vec<Rational> {
    if hi < lo {
        return Vec::new();
    }
    let k = AnyKernel::new(g, lo.abs().max(hi.abs()));
    dispatch!(k, k => (lo..=hi).map(|n| k.eval(n, variant).0.to_rational(&k.scale)).collect())
}

/// Limit of the maximal function at `-∞` (`Side::Left`) or `+∞`.
pub fn m_limit(g: &BVSequence, side: Side, variant: Variant) -> Rational {
    let a = g.a().abs();
    let b = g.b().abs();
    match (variant, side) {
        (Variant::Centered, Side::Left) => rational::max(&a, &((&a + &b) / int(2))),
        (Variant::Centered, Side::Right) => rational::max(&b, &((&a + &b) / int(2))),
        (Variant::OneSided, Side::Right) => b,
        (Variant::OneSided, Side::Left) | (Variant::Uncentered, _) => rational::max(&a, &b),
    }
}

/// Candidates for the centered operator beyond the core on `side`.
pub fn tail_candidates(g: &BVSequence, side: Side) -> Vec<TailCandidate> {
    tail_candidates_variant(g, side, Variant::Centered)
}

pub fn tail_candidates_variant(g: &BVSequence, side: Side, variant: Variant) -> Vec<TailCandidate> {
    let g = g.abs().normalize();
    match (variant, side) {
        (Variant::OneSided, Side::Left) => one_sided_left(&g),
        (Variant::OneSided, Side::Right) => vec![TailCandidate {
            side,
            anchor: None,
            curve: MobiusPiece::constant(g.b().clone()),
            boundary: g.core_end(),
        }],
        (_, Side::Right) => right_candidates(&g, variant),
        (_, Side::Left) => {
            let r = g.reflect();
            right_candidates(&r, variant)
                .into_iter()
                .map(|c| TailCandidate {
                    side: Side::Left,
                    anchor: c.anchor.map(|l| -l),
                    curve: c.curve.reflect(),
                    boundary: -c.boundary,
                })
                .collect()
        }
    }
}

fn core_sums_from(g: &BVSequence) -> Vec<Rational> {
    // suffix[i] = sum of core[i..]
    let mut out = vec![Rational::zero(); g.core().len() + 1];
    for i in (0..g.core().len()).rev() {
        out[i] = &out[i + 1] + &g.core()[i];
    }
    out
}

fn right_candidates(g: &BVSequence, variant: Variant) -> Vec<TailCandidate> {
    let (a, b) = (g.a().clone(), g.b().clone());
    let boundary = g.core_end();
    let last = int(boundary - 1);
    let suffix = core_sums_from(g);
    let mut out = Vec::new();
    for (i, s_le) in suffix.iter().take(g.core().len()).enumerate() {
        let l = g.offset() + i as i64;
        let curve = match variant {
            // (S + b(2n − l − e)) / (2n − 2l + 1)
            Variant::Centered => MobiusPiece::new(
                int(2) * &b,
                s_le - &b * (int(l) + &last),
                int(2),
                int(1 - 2 * l),
            ),
            // (S + b(n − e)) / (n − l + 1)
            _ => MobiusPiece::new(b.clone(), s_le - &b * &last, int(1), int(1 - l)),
        };
        out.push(TailCandidate {
            side: Side::Right,
            anchor: Some(l),
            curve,
            boundary,
        });
    }
    let constants = match variant {
        Variant::Centered => vec![b.clone(), (&a + &b) / int(2)],
        _ => vec![a, b],
    };
    for c in constants {
        out.push(TailCandidate {
            side: Side::Right,
            anchor: None,
            curve: MobiusPiece::constant(c),
            boundary,
        });
    }
    out
}

fn one_sided_left(g: &BVSequence) -> Vec<TailCandidate> {
    let (a, b) = (g.a().clone(), g.b().clone());
    let s = g.offset();
    let mut out = Vec::new();
    let mut prefix = Rational::zero();
    for (i, v) in g.core().iter().enumerate() {
        prefix += v;
        let r = s + i as i64;
        // (a(s − n) + S_{s..r}) / (r − n + 1)
        out.push(TailCandidate {
            side: Side::Left,
            anchor: Some(r),
            curve: MobiusPiece::new(-a.clone(), &a * int(s) + &prefix, int(-1), int(r + 1)),
            boundary: s - 1,
        });
    }
    for c in [a, b] {
        out.push(TailCandidate {
            side: Side::Left,
            anchor: None,
            curve: MobiusPiece::constant(c),
            boundary: s - 1,
        });
    }
    out
}

/// Exact total variation of the centered maximal function.
pub fn var_of_m_discrete(g: &BVSequence) -> Rational {
    var_of_m_discrete_variant(g, Variant::Centered)
}

pub fn var_of_m_discrete_variant(g: &BVSequence, variant: Variant) -> Rational {
    let g = g.abs().normalize();
    if g.core().is_empty() && g.a() == g.b() {
        return Rational::zero();
    }
    let (n_lo, n_hi) = monotone_thresholds(&g, variant);
    let k = AnyKernel::new(&g, n_lo.abs().max(n_hi.abs()));
    let lim_l = m_limit(&g, Side::Left, variant);
    let lim_r = m_limit(&g, Side::Right, variant);
    dispatch!(k, k => {
        let mut t = FracTelescope::new(&k.scale);
        for n in n_lo..=n_hi {
            t.push(k.eval(n, variant).0);
        }
        let first = t.first.clone().expect("nonempty range").to_rational(&k.scale);
        let last = t.last.clone().expect("nonempty range").to_rational(&k.scale);
        t.finish() + (first - lim_l).abs() + (last - lim_r).abs()
    })
}

/// Integers `n_lo <= n_hi` outside of which the maximal function coincides
/// with a single monotone tail curve.
pub fn monotone_thresholds(g: &BVSequence, variant: Variant) -> (i64, i64) {
    let g = g.abs().normalize();
    let hi = tail_threshold(&tail_candidates_variant(&g, Side::Right, variant), Side::Right)
        .max(g.core_end());
    let lo = tail_threshold(&tail_candidates_variant(&g, Side::Left, variant), Side::Left)
        .min(g.offset() - 1);
    (lo, hi)
}

fn tail_threshold(cands: &[TailCandidate], side: Side) -> i64 {
    let germ = |p: &crate::numbers::Poly2| match side {
        Side::Right => p.sign_at_pos_infinity(),
        Side::Left => p.sign_at_neg_infinity(),
    };
    let mut w = &cands[0];
    for c in &cands[1..] {
        if germ(&c.curve.cross(&w.curve)) == crate::numbers::Sign::Positive {
            w = c;
        }
    }
    let mut bound = cands[0].boundary;
    for c in cands {
        let q = w.curve.cross(&c.curve);
        if q.is_zero() {
            continue;
        }
        for root in q.real_roots() {
            bound = match side {
                Side::Right => bound.max(to_i64(&root.ceil_bound()) + 1),
                Side::Left => bound.min(to_i64(&root.floor_bound()) - 1),
            };
        }
    }
    bound
}

fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("crossing abscissa fits in i64")
}

pub(crate) trait Int:
    Clone + Ord + Signed + FromPrimitive + Into<BigInt> + std::fmt::Debug
{
}
impl Int for i128 {}
impl Int for BigInt {}

#[derive(Clone, Debug)]
pub(crate) struct Frac<T> {
    num: T,
    den: T,
}

impl<T: Int> Frac<T> {
    fn cmp(&self, o: &Frac<T>) -> Ordering {
        (self.num.clone() * o.den.clone()).cmp(&(o.num.clone() * self.den.clone()))
    }

    fn to_rational(&self, scale: &BigInt) -> Rational {
        let num: BigInt = self.num.clone().into();
        let den: BigInt = self.den.clone().into();
        Rational::new(num, den * scale)
    }
}

struct FracTelescope<'a, T> {
    scale: &'a BigInt,
    total: Rational,
    first: Option<Frac<T>>,
    run_start: Option<Frac<T>>,
    last: Option<Frac<T>>,
    dir: Ordering,
}

impl<'a, T: Int> FracTelescope<'a, T> {
    fn new(scale: &'a BigInt) -> Self {
        FracTelescope {
            scale,
            total: Rational::zero(),
            first: None,
            run_start: None,
            last: None,
            dir: Ordering::Equal,
        }
    }

    fn push(&mut self, v: Frac<T>) {
        let Some(last) = self.last.take() else {
            self.first = Some(v.clone());
            self.run_start = Some(v.clone());
            self.last = Some(v);
            return;
        };
        let step = v.cmp(&last);
        if step != Ordering::Equal {
            if self.dir != Ordering::Equal && step != self.dir {
                let start = self.run_start.take().expect("run start");
                self.total += (last.to_rational(self.scale) - start.to_rational(self.scale)).abs();
                self.run_start = Some(last.clone());
            }
            self.dir = step;
        }
        self.last = Some(v);
    }

    fn finish(self) -> Rational {
        match (&self.run_start, &self.last) {
            (Some(s), Some(l)) => {
                self.total + (l.to_rational(self.scale) - s.to_rational(self.scale)).abs()
            }
            _ => self.total,
        }
    }
}

/// `|G|` scaled to integers, with prefix sums over the core.
pub(crate) struct Kernel<T> {
    a: T,
    b: T,
    s: i64,
    e: i64,
    prefix: Vec<T>,
    scale: BigInt,
}

pub(crate) enum AnyKernel {
    Small(Kernel<i128>),
    Big(Kernel<BigInt>),
}

macro_rules! dispatch {
    ($k:expr, $kk:ident => $body:expr) => {
        match $k {
            AnyKernel::Small($kk) => $body,
            AnyKernel::Big($kk) => $body,
        }
    };
}
use dispatch;

impl AnyKernel {
    /// Kernel able to evaluate at every `|n| <= reach`.
    pub(crate) fn new(g: &BVSequence, reach: i64) -> AnyKernel {
        let vals: Vec<Rational> = std::iter::once(g.a())
            .chain(std::iter::once(g.b()))
            .chain(g.core().iter())
            .map(|v| v.abs())
            .collect();
        let scale = vals
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints: Vec<BigInt> = vals
            .iter()
            .map(|v| (v * Rational::from_integer(scale.clone())).to_integer())
            .collect();
        let max_bits = ints.iter().map(|x| x.bits()).max().unwrap_or(0);
        let span = reach.unsigned_abs() as u128
            + g.offset().unsigned_abs() as u128
            + g.core_end().unsigned_abs() as u128
            + 2;
        let width_bits = 130 - (4 * span).leading_zeros() as u64;
        let fits = max_bits + 2 * width_bits + 4 < 126;
        if fits {
            let small: Vec<i128> = ints.iter().map(|x| x.to_i128().unwrap()).collect();
            AnyKernel::Small(Kernel::build(g, small, scale))
        } else {
            AnyKernel::Big(Kernel::build(g, ints, scale))
        }
    }
}

impl<T: Int> Kernel<T> {
    fn build(g: &BVSequence, ints: Vec<T>, scale: BigInt) -> Self {
        let mut it = ints.into_iter();
        let a = it.next().unwrap();
        let b = it.next().unwrap();
        let mut prefix = vec![T::zero()];
        for v in it {
            let next = prefix.last().unwrap().clone() + v;
            prefix.push(next);
        }
        Kernel {
            a,
            b,
            s: g.offset(),
            e: g.core_end(),
            prefix,
            scale,
        }
    }

    fn t(n: i64) -> T {
        T::from_i64(n).expect("integer conversion")
    }

    /// Sum of `|G|` over `l..=r`.
    fn sum(&self, l: i64, r: i64) -> T {
        debug_assert!(l <= r);
        let mut total = T::zero();
        if l < self.s {
            total = total + self.a.clone() * Self::t(r.min(self.s - 1) - l + 1);
        }
        let lo = l.max(self.s);
        let hi = r.min(self.e - 1);
        if lo <= hi {
            total = total + self.prefix[(hi - self.s + 1) as usize].clone()
                - self.prefix[(lo - self.s) as usize].clone();
        }
        if r >= self.e {
            total = total + self.b.clone() * Self::t(r - l.max(self.e) + 1);
        }
        total
    }

    fn avg(&self, l: i64, r: i64) -> Frac<T> {
        Frac {
            num: self.sum(l, r),
            den: Self::t(r - l + 1),
        }
    }

    fn eval(&self, n: i64, variant: Variant) -> (Frac<T>, Option<DiscreteWindow>) {
        match variant {
            Variant::Centered => self.centered(n),
            Variant::OneSided => self.one_sided(n),
            Variant::Uncentered => self.uncentered(n),
        }
    }

    fn pick(
        best: &mut Option<(Frac<T>, Option<DiscreteWindow>)>,
        v: Frac<T>,
        w: Option<DiscreteWindow>,
    ) {
        match best {
            Some((b, _)) if v.cmp(b) != Ordering::Greater => {}
            _ => *best = Some((v, w)),
        }
    }

    fn centered(&self, n: i64) -> (Frac<T>, Option<DiscreteWindow>) {
        // Radii whose left or right edge lands in [s − 1, e]; between those
        // the average is monotone in the radius.
        let mut ms = vec![0i64];
        let (l0, l1) = ((n - self.e).max(0), n - self.s + 1);
        ms.extend(l0..=l1);
        let (r0, r1) = ((self.s - 1 - n).max(0), self.e - n);
        ms.extend(r0..=r1);
        ms.sort_unstable();
        ms.dedup();
        let mut best = None;
        for m in ms {
            let w = DiscreteWindow { lo: n - m, hi: n + m };
            Self::pick(&mut best, self.avg(w.lo, w.hi), Some(w));
        }
        let limit = Frac {
            num: self.a.clone() + self.b.clone(),
            den: Self::t(2),
        };
        Self::pick(&mut best, limit, None);
        best.unwrap()
    }

    fn one_sided(&self, n: i64) -> (Frac<T>, Option<DiscreteWindow>) {
        let mut ms = vec![0i64];
        ms.extend((self.s - 1 - n).max(1)..=self.e - n);
        let mut best = None;
        for m in ms {
            let w = DiscreteWindow { lo: n, hi: n + m };
            Self::pick(&mut best, self.avg(w.lo, w.hi), Some(w));
        }
        let limit = Frac {
            num: self.b.clone(),
            den: T::one(),
        };
        Self::pick(&mut best, limit, None);
        best.unwrap()
    }

    fn uncentered(&self, n: i64) -> (Frac<T>, Option<DiscreteWindow>) {
        let mut ls = vec![n];
        ls.extend((self.s - 1)..=self.e.min(n - 1));
        let mut rs = vec![n];
        rs.extend((self.s - 1).max(n + 1)..=self.e);
        let mut windows: Vec<DiscreteWindow> = ls
            .iter()
            .flat_map(|&lo| rs.iter().map(move |&hi| DiscreteWindow { lo, hi }))
            .collect();
        windows.sort_by_key(|w| (w.len(), w.lo));
        let mut best = None;
        for w in windows {
            Self::pick(&mut best, self.avg(w.lo, w.hi), Some(w));
        }
        for t in [self.a.clone(), self.b.clone()] {
            Self::pick(&mut best, Frac { num: t, den: T::one() }, None);
        }
        best.unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;

    fn seq(a: i64, b: i64, offset: i64, core: &[i64]) -> BVSequence {
        BVSequence::new(int(a), int(b), offset, core.iter().map(|&v| int(v)).collect())
    }

    /// Direct maximum over all windows of bounded size, plus the limit value.
    fn brute(g: &BVSequence, n: i64, variant: Variant, reach: i64) -> Rational {
        let val = |k: i64| g.value_at(k).abs();
        let avg = |l: i64, r: i64| (l..=r).map(val).sum::<Rational>() / int(r - l + 1);
        let mut best = m_limit_candidate(g, variant);
        match variant {
            Variant::Centered => {
                for m in 0..=reach {
                    best = best.max(avg(n - m, n + m));
                }
            }
            Variant::OneSided => {
                for m in 0..=reach {
                    best = best.max(avg(n, n + m));
                }
            }
            Variant::Uncentered => {
                for l in n - reach..=n {
                    for r in n..=n + reach {
                        best = best.max(avg(l, r));
                    }
                }
            }
        }
        best
    }

    fn m_limit_candidate(g: &BVSequence, variant: Variant) -> Rational {
        let (a, b) = (g.a().abs(), g.b().abs());
        match variant {
            Variant::Centered => (a + b) / int(2),
            Variant::OneSided => b,
            Variant::Uncentered => a.max(b),
        }
    }

    #[test]
    fn point_examples() {
        let d = BVSequence::delta(0, int(1));
        assert_eq!(m_discrete_at(&d, 0, Variant::Centered), int(1));
        assert_eq!(m_discrete_at(&d, 1, Variant::Centered), rat(1, 3));
        assert_eq!(m_discrete_at(&d, -1, Variant::OneSided), rat(1, 2));
        assert_eq!(m_discrete_at(&d, 2, Variant::Uncentered), rat(1, 3));
        let step = seq(1, 0, 0, &[]);
        let v = m_discrete_eval(&step, 0, Variant::Centered);
        assert_eq!(v.value, rat(1, 2));
        assert_eq!(v.window, None);
    }

    #[test]
    fn minimal_window_reported() {
        let d = BVSequence::delta(0, int(1));
        let v = m_discrete_eval(&d, 1, Variant::Centered);
        assert_eq!(v.window, Some(DiscreteWindow { lo: 0, hi: 2 }));
    }

    #[test]
    fn limits() {
        let g = seq(1, 0, 0, &[]);
        assert_eq!(m_limit(&g, Side::Right, Variant::Centered), rat(1, 2));
        assert_eq!(m_limit(&g, Side::Left, Variant::Centered), int(1));
        assert_eq!(m_limit(&g, Side::Right, Variant::Uncentered), int(1));
    }

    #[test]
    fn tail_candidate_shapes() {
        let d = BVSequence::delta(0, int(1));
        let right = tail_candidates(&d, Side::Right);
        assert_eq!(right.len(), 3);
        assert_eq!(right[0].anchor, Some(0));
        for n in 1..20 {
            assert_eq!(right[0].value_at(n), Rational::new(1.into(), (2 * n + 1).into()));
        }
        let empty = seq(1, 0, 0, &[]);
        let c: Vec<_> = tail_candidates(&empty, Side::Right)
            .iter()
            .map(|c| c.curve.constant_value().unwrap())
            .collect();
        assert_eq!(c, vec![int(0), rat(1, 2)]);
    }

    #[test]
    fn tail_candidates_match_pointwise() {
        let g = seq(1, 0, 0, &[5]);
        for variant in Variant::ALL {
            for side in [Side::Left, Side::Right] {
                let cands = tail_candidates_variant(&g, side, variant);
                let ns: Vec<i64> = match side {
                    Side::Right => (1..40).collect(),
                    Side::Left => (-40..0).collect(),
                };
                for n in ns {
                    let best = cands
                        .iter()
                        .filter(|c| c.is_valid_at(n))
                        .map(|c| c.value_at(n))
                        .max()
                        .unwrap();
                    assert_eq!(best, m_discrete_at(&g, n, variant), "{variant:?} {side:?} n={n}");
                }
            }
        }
    }

    #[test]
    fn pointwise_matches_brute_force() {
        let cases = [
            seq(0, 0, 0, &[1]),
            seq(1, 0, 0, &[5]),
            seq(2, 1, -2, &[0, 3, 0, 1]),
            seq(0, 3, 1, &[2, 0, 0, 2]),
            BVSequence::new(rat(1, 2), rat(-3, 4), -1, vec![rat(7, 3), int(0), rat(-5, 2)]),
        ];
        for g in &cases {
            for variant in Variant::ALL {
                for n in -8..8 {
                    assert_eq!(
                        m_discrete_at(g, n, variant),
                        brute(g, n, variant, 30),
                        "{variant:?} n={n} g={g:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn variation_examples() {
        assert_eq!(var_of_m_discrete(&BVSequence::delta(0, int(1))), int(2));
        assert_eq!(var_of_m_discrete(&BVSequence::constant(int(3))), int(0));
        assert_eq!(var_of_m_discrete(&seq(0, 0, 0, &[0, 0])), int(0));
    }

    #[test]
    fn big_kernel_agrees_with_small() {
        let g = seq(1, 0, -1, &[0, 4, 0, 2]);
        let big = BVSequence::new(
            int(1) * Rational::from_integer(BigInt::from(10).pow(40)),
            int(0),
            -1,
            g.core()
                .iter()
                .map(|v| v * Rational::from_integer(BigInt::from(10).pow(40)))
                .collect(),
        );
        assert!(matches!(AnyKernel::new(&big, 10), AnyKernel::Big(_)));
        let factor = Rational::from_integer(BigInt::from(10).pow(40));
        assert_eq!(var_of_m_discrete(&big), var_of_m_discrete(&g) * &factor);
        for n in -5..6 {
            assert_eq!(
                m_discrete_at(&big, n, Variant::Centered),
                m_discrete_at(&g, n, Variant::Centered) * &factor
            );
        }
    }
}
