//! Test-side oracles and generators, independent of the library's
//! candidate reductions.
#![allow(dead_code)]

use maxvar::functions::{BVSequence, StepFunction};
use maxvar::maximal::Variant;
use maxvar::numbers::{int, rat, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;
use std::cmp::Ordering;

/// `|G|` scaled to integers.
pub struct Scaled {
    a: i128,
    b: i128,
    s: i64,
    e: i64,
    prefix: Vec<i128>,
    den: i128,
}

impl Scaled {
    pub fn new(g: &BVSequence) -> Scaled {
        let g = g.abs();
        let g = g.widened(g.offset() - 1, g.core_end() + 1);
        let mut den = BigInt::from(1);
        for v in g.core().iter().chain([g.a(), g.b()]) {
            den = den.lcm(v.denom());
        }
        let den_r = Rational::from_integer(den.clone());
        let to = |v: &Rational| (v * &den_r).to_integer().to_i128().expect("scaled value fits");
        let mut prefix = vec![0i128];
        for v in g.core() {
            prefix.push(prefix.last().unwrap() + to(v));
        }
        Scaled {
            a: to(g.a()),
            b: to(g.b()),
            s: g.offset(),
            e: g.core_end(),
            prefix,
            den: den.to_i128().expect("denominator fits"),
        }
    }

    /// Sum over `l..=r`.
    pub fn sum(&self, l: i64, r: i64) -> i128 {
        if l > r {
            return 0;
        }
        let mut t = 0i128;
        let left_end = r.min(self.s - 1);
        if left_end >= l {
            t += self.a * (left_end - l + 1) as i128;
        }
        let (cl, cr) = (l.max(self.s), r.min(self.e - 1));
        if cl <= cr {
            t += self.prefix[(cr - self.s + 1) as usize] - self.prefix[(cl - self.s) as usize];
        }
        let right_start = l.max(self.e);
        if right_start <= r {
            t += self.b * (r - right_start + 1) as i128;
        }
        t
    }

    /// Radius beyond which every window covers the core.
    fn reach(&self, n: i64) -> i64 {
        (n - self.s).abs().max((n - self.e).abs()) + 2
    }

    fn frac(&self, num: i128, den: i128) -> Rational {
        Rational::new(BigInt::from(num), BigInt::from(den * self.den))
    }

    /// Largest window average over every admissible window reaching at most
    /// `reach(n)` past `n`, together with the limits of larger windows.
    /// Windows missing the core lie in one tail and average to `|G(n)|`, so
    /// only `m = 0` among them is tried.
    pub fn brute_frac(&self, n: i64, variant: Variant) -> (i128, i128) {
        let big = self.reach(n);
        let left_from = (n - self.e + 1).max(0);
        let right_from = (self.s - n).max(0);
        let mut best = (self.sum(n, n), 1i128);
        let mut offer = |p: i128, q: i128| {
            if p * best.1 > best.0 * q {
                best = (p, q);
            }
        };
        match variant {
            Variant::Centered => {
                for m in left_from.max(right_from)..=big {
                    offer(self.sum(n - m, n + m), (2 * m + 1) as i128);
                }
                offer(self.a + self.b, 2);
            }
            Variant::OneSided => {
                let from = if n >= self.e { big + 1 } else { right_from };
                for m in from..=big {
                    offer(self.sum(n, n + m), (m + 1) as i128);
                }
                offer(self.b, 1);
            }
            Variant::Uncentered => {
                for m1 in left_from..=big {
                    for m2 in right_from..=big {
                        offer(self.sum(n - m1, n + m2), (m1 + m2 + 1) as i128);
                    }
                }
                offer(self.a, 1);
                offer(self.b, 1);
            }
        }
        best
    }

    pub fn brute(&self, n: i64, variant: Variant) -> Rational {
        let (p, q) = self.brute_frac(n, variant);
        self.frac(p, q)
    }

    pub fn limits(&self, variant: Variant) -> ((i128, i128), (i128, i128)) {
        let (a, b) = ((2 * self.a, 2), (2 * self.b, 2));
        let mid = (self.a + self.b, 2);
        let top = fmax(a, b);
        match variant {
            Variant::Centered => (fmax(a, mid), fmax(b, mid)),
            Variant::OneSided => (top, b),
            Variant::Uncentered => (top, top),
        }
    }

    pub fn core_range(&self) -> (i64, i64) {
        (self.s, self.e)
    }
}

fn fcmp(x: (i128, i128), y: (i128, i128)) -> Ordering {
    (x.0 * y.1).cmp(&(y.0 * x.1))
}

fn fmax(x: (i128, i128), y: (i128, i128)) -> (i128, i128) {
    if fcmp(x, y).is_lt() {
        y
    } else {
        x
    }
}

fn monotone(xs: &[(i128, i128)]) -> bool {
    xs.windows(2).all(|w| fcmp(w[0], w[1]).is_le()) || xs.windows(2).all(|w| fcmp(w[0], w[1]).is_ge())
}

/// `Var(MG)` from brute-force values on `[s − w, e + w]`, accepted only
/// when the outer quarter of each side runs monotonically into the limit.
/// The variation is summed over turning points only.
pub fn oracle_var(g: &BVSequence, w: i64, variant: Variant) -> Option<Rational> {
    let sc = Scaled::new(g);
    let (s, e) = sc.core_range();
    let (lim_l, lim_r) = sc.limits(variant);
    let mut seq = vec![lim_l];
    seq.extend((s - w..=e + w).map(|n| sc.brute_frac(n, variant)));
    seq.push(lim_r);
    let t = (w / 4).max(2) as usize + 1;
    if !monotone(&seq[..t]) || !monotone(&seq[seq.len() - t..]) {
        return None;
    }
    let mut turns = vec![seq[0]];
    let mut dir = Ordering::Equal;
    for win in seq.windows(2) {
        let d = fcmp(win[1], win[0]);
        if d == Ordering::Equal {
            continue;
        }
        if dir != Ordering::Equal && d != dir {
            turns.push(win[0]);
        }
        dir = d;
    }
    turns.push(seq[seq.len() - 1]);
    let mut var = Rational::from_integer(0.into());
    for p in turns.windows(2) {
        var += (sc.frac(p[1].0, p[1].1) - sc.frac(p[0].0, p[0].1)).abs();
    }
    Some(var)
}

/// `p/q` with `|p| ≤ bound`, `q ≤ 4`.
pub fn small_rational(bound: i64, signed: bool) -> impl Strategy<Value = Rational> {
    let lo = if signed { -bound } else { 0 };
    (lo..=bound, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

pub fn sequence(max_len: usize, bound: i64, signed: bool) -> impl Strategy<Value = BVSequence> {
    (
        small_rational(bound, signed),
        small_rational(bound, signed),
        -6i64..6,
        prop::collection::vec(small_rational(bound, signed), 0..=max_len),
    )
        .prop_map(|(a, b, s, core)| BVSequence::new(a, b, s, core))
}

/// Breakpoints on a quarter grid.
pub fn step_function(max_pieces: usize, bound: i64, signed: bool) -> impl Strategy<Value = StepFunction> {
    (1..=max_pieces).prop_flat_map(move |k| {
        (
            small_rational(bound, signed),
            small_rational(bound, signed),
            -16i64..8,
            prop::collection::vec(1i64..=12, k),
            prop::collection::vec(small_rational(bound, signed), k),
        )
            .prop_map(|(a, b, start, gaps, values)| {
                let mut t = vec![rat(start, 4)];
                for g in gaps {
                    let next = t.last().unwrap() + rat(g, 4);
                    t.push(next);
                }
                StepFunction::new(a, b, t, values).unwrap()
            })
    })
}

/// Zero pieces interleaved with arbitrary ones.
pub fn alternating_step_function(max_pieces: usize, bound: i64) -> impl Strategy<Value = StepFunction> {
    (step_function(max_pieces, bound, true), any::<bool>()).prop_map(|(f, parity)| {
        let values = f
            .values()
            .iter()
            .enumerate()
            .map(|(i, v)| if (i % 2 == 0) == parity { int(0) } else { v.clone() })
            .collect();
        StepFunction::new(f.a().clone(), f.b().clone(), f.breakpoints().to_vec(), values).unwrap()
    })
}

pub fn rational_point() -> impl Strategy<Value = Rational> {
    (-96i64..96, 1i64..=8).prop_map(|(p, q)| rat(p, q))
}
