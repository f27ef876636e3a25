//! Exact global representation of a maximal function of a step function as
//! the upper envelope of its candidate curves.

use std::cmp::Ordering;

use serde_json::{json, Value};

use super::continuous::{event_points, interval_candidates, point_value, prepare, CandidateKind};
use super::Variant;
use crate::functions::{Antiderivative, Side, StepFunction};
use crate::mobius::MobiusPiece;
use crate::numbers::rational::format_rational;
use crate::numbers::{isolate_roots, Poly2, QuadraticValue, RadicalSum, Rational, RootDescriptor, Sign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Position {
    NegInfinity,
    At(QuadraticValue),
    PosInfinity,
}

impl Position {
    fn at_rational(x: &Rational) -> Position {
        Position::At(QuadraticValue::rational(x.clone()))
    }

    pub fn as_value(&self) -> Option<&QuadraticValue> {
        match self {
            Position::At(x) => Some(x),
            _ => None,
        }
    }

    pub fn cmp_position(&self, other: &Position) -> Ordering {
        use Position::*;
        match (self, other) {
            (NegInfinity, NegInfinity) | (PosInfinity, PosInfinity) => Ordering::Equal,
            (NegInfinity, _) | (_, PosInfinity) => Ordering::Less,
            (_, NegInfinity) | (PosInfinity, _) => Ordering::Greater,
            (At(x), At(y)) => x.cmp_exact(y),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Position::NegInfinity => json!("-inf"),
            Position::PosInfinity => json!("+inf"),
            Position::At(x) => json!(x.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    Constant,
}

/// Open stretch on which one candidate curve is the maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub start: Position,
    pub end: Position,
    pub candidate: CandidateKind,
    pub curve: MobiusPiece,
    pub monotonicity: Monotonicity,
    /// Limits of the maximal function at the two ends of the segment.
    pub start_value: QuadraticValue,
    pub end_value: QuadraticValue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KnotKind {
    /// Rational point where the candidate set changes.
    Event,
    /// Point inside an event interval where the active curve changes.
    Crossing,
}

/// Boundary point between two segments with the one-sided limits and the
/// value of the maximal function there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Knot {
    pub x: QuadraticValue,
    pub kind: KnotKind,
    pub root: Option<RootDescriptor>,
    pub left: QuadraticValue,
    pub value: QuadraticValue,
    pub right: QuadraticValue,
}

/// `segments[i]` lies between `knots[i − 1]` and `knots[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseMax {
    pub variant: Variant,
    pub segments: Vec<Segment>,
    pub knots: Vec<Knot>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremumKind {
    Maximum,
    Minimum,
}

/// A maximal connected set of local maxima or minima with common value.
/// `lo`/`hi` bound it; a bound is included iff the matching flag is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremum {
    pub kind: ExtremumKind,
    pub lo: Position,
    pub lo_closed: bool,
    pub hi: Position,
    pub hi_closed: bool,
    pub value: QuadraticValue,
    /// Index into the profile of the leftmost point of the set at which the
    /// value is attained.
    pub profile_index: usize,
}

impl Extremum {
    pub fn contains(&self, x: &QuadraticValue) -> bool {
        let p = Position::At(x.clone());
        let lo = p.cmp_position(&self.lo);
        let hi = p.cmp_position(&self.hi);
        (lo == Ordering::Greater || (lo == Ordering::Equal && self.lo_closed))
            && (hi == Ordering::Less || (hi == Ordering::Equal && self.hi_closed))
    }

    /// Leftmost point of the set, when it has one.
    pub fn leftmost(&self) -> Option<&QuadraticValue> {
        if self.lo_closed {
            self.lo.as_value()
        } else {
            None
        }
    }
}

/// Role of a profile entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileRole {
    /// Limit from the left (the limit at `−∞` for the first entry).
    LeftLimit,
    Value,
    /// Limit from the right (the limit at `+∞` for the last entry).
    RightLimit,
}

/// The maximal function read left to right as limits and point values; its
/// variation is the sum of absolute consecutive differences.
#[derive(Clone, Debug)]
pub struct ProfileEntry {
    pub x: Position,
    pub role: ProfileRole,
    pub value: QuadraticValue,
}

pub fn build_piecewise(f: &StepFunction) -> PiecewiseMax {
    build_piecewise_variant(f, Variant::Centered)
}

pub fn build_piecewise_variant(f: &StepFunction, variant: Variant) -> PiecewiseMax {
    let g = prepare(f);
    let big = Antiderivative::new(&g);
    let events = event_points(&g, variant);
    let mut segments: Vec<Segment> = Vec::new();
    let mut knots: Vec<Knot> = Vec::new();
    for idx in 0..=events.len() {
        let lo = if idx == 0 { None } else { Some(&events[idx - 1]) };
        let hi = events.get(idx);
        let sample = match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / Rational::from_integer(2.into()),
            (Some(l), None) => l + Rational::from_integer(1.into()),
            (None, Some(h)) => h - Rational::from_integer(1.into()),
            (None, None) => Rational::from_integer(0.into()),
        };
        let cands = interval_candidates(&g, &big, variant, lo, hi, &sample);
        let pieces = sweep(lo, hi, cands);
        for (i, piece) in pieces.into_iter().enumerate() {
            let seg = piece.segment;
            if i == 0 {
                if let Some(k) = knots.last_mut() {
                    k.right = seg.start_value.clone();
                }
            } else {
                let x = seg.start.as_value().expect("crossing inside the interval").clone();
                let v = seg.start_value.clone();
                let root = piece.crossing.and_then(|q| descriptor_for(&q, &x));
                knots.push(Knot {
                    x,
                    kind: KnotKind::Crossing,
                    root,
                    left: v.clone(),
                    value: v.clone(),
                    right: v,
                });
            }
            segments.push(seg);
        }
        if let Some(h) = hi {
            let left = segments.last().expect("segment").end_value.clone();
            knots.push(Knot {
                x: QuadraticValue::rational(h.clone()),
                kind: KnotKind::Event,
                root: None,
                left: left.clone(),
                value: QuadraticValue::rational(point_value(&g, h, variant)),
                right: left,
            });
        }
    }
    PiecewiseMax {
        variant,
        segments,
        knots,
    }
}

fn descriptor_for(q: &Poly2, x: &QuadraticValue) -> Option<RootDescriptor> {
    isolate_roots(&q.c2, &q.c1, &q.c0)
        .ok()?
        .into_iter()
        .find(|d| &d.value == x)
}

struct SweepPiece {
    segment: Segment,
    crossing: Option<Poly2>,
}

fn value_at(curve: &MobiusPiece, p: &Position) -> QuadraticValue {
    match p {
        Position::At(x) => curve.eval_q(x).expect("curve defined on its segment"),
        _ => QuadraticValue::rational(curve.limit_at_infinity().expect("bounded curve")),
    }
}

fn rational_value_at(curve: &MobiusPiece, x: Option<&Rational>) -> Rational {
    match x {
        Some(x) => curve.eval(x).expect("curve defined on the closed interval"),
        None => curve.limit_at_infinity().expect("bounded curve"),
    }
}

/// Sign of `a − b` just right of `pos`, candidates assumed to have positive
/// denominators there.
fn germ_right(a: &MobiusPiece, b: &MobiusPiece, pos: &Position) -> Sign {
    let q = a.cross(b);
    match pos {
        Position::NegInfinity => q.sign_at_neg_infinity(),
        Position::At(x) => q.sign_right_of(x),
        Position::PosInfinity => unreachable!("no interval right of +∞"),
    }
}

fn beats(a: &(CandidateKind, MobiusPiece), b: &(CandidateKind, MobiusPiece), pos: &Position) -> bool {
    match germ_right(&a.1, &b.1, pos) {
        Sign::Positive => true,
        Sign::Negative => false,
        Sign::Zero => a.0 < b.0,
    }
}

/// Upper envelope of `cands` on the open interval `(lo, hi)`.
fn sweep(
    lo: Option<&Rational>,
    hi: Option<&Rational>,
    cands: Vec<(CandidateKind, MobiusPiece)>,
) -> Vec<SweepPiece> {
    // Drop candidates lying below the envelope's minimum on the interval.
    let bounds: Vec<(Rational, Rational)> = cands
        .iter()
        .map(|(_, c)| {
            let u = rational_value_at(c, lo);
            let v = rational_value_at(c, hi);
            if u <= v {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect();
    let floor = bounds.iter().map(|(mn, _)| mn).max().expect("candidates").clone();
    let cands: Vec<_> = cands
        .into_iter()
        .zip(&bounds)
        .filter(|(_, (_, mx))| *mx >= floor)
        .map(|(c, _)| c)
        .collect();

    let start = lo.map_or(Position::NegInfinity, Position::at_rational);
    let end = hi.map_or(Position::PosInfinity, Position::at_rational);
    let mut cur = 0;
    for j in 1..cands.len() {
        if beats(&cands[j], &cands[cur], &start) {
            cur = j;
        }
    }
    let mut pos = start;
    let mut crossing: Option<Poly2> = None;
    let mut out = Vec::new();
    loop {
        let mut next: Option<(QuadraticValue, usize, Poly2)> = None;
        for j in 0..cands.len() {
            if j == cur {
                continue;
            }
            let q = cands[j].1.cross(&cands[cur].1);
            if q.is_zero() {
                continue;
            }
            for rho in q.real_roots() {
                let p = Position::At(rho.clone());
                if p.cmp_position(&pos) != Ordering::Greater {
                    continue;
                }
                if p.cmp_position(&end) != Ordering::Less {
                    break;
                }
                if q.sign_right_of(&rho) != Sign::Positive {
                    continue;
                }
                let better = match &next {
                    None => true,
                    Some((r, k, _)) => match rho.cmp_exact(r) {
                        Ordering::Less => true,
                        Ordering::Equal => beats(&cands[j], &cands[*k], &p),
                        Ordering::Greater => false,
                    },
                };
                if better {
                    next = Some((rho, j, q.clone()));
                }
                break;
            }
        }
        let (kind, curve) = &cands[cur];
        let seg_end = next
            .as_ref()
            .map_or(end.clone(), |(r, _, _)| Position::At(r.clone()));
        out.push(SweepPiece {
            segment: Segment {
                start_value: value_at(curve, &pos),
                end_value: value_at(curve, &seg_end),
                start: pos.clone(),
                end: seg_end.clone(),
                candidate: *kind,
                curve: curve.clone(),
                monotonicity: match curve.slope_sign() {
                    Sign::Positive => Monotonicity::Increasing,
                    Sign::Negative => Monotonicity::Decreasing,
                    Sign::Zero => Monotonicity::Constant,
                },
            },
            crossing: crossing.take(),
        });
        match next {
            None => break,
            Some((_, j, q)) => {
                pos = seg_end;
                cur = j;
                crossing = Some(q);
            }
        }
    }
    out
}

/// Accumulates `Σ |v_{i+1} − v_i|` over a stream of exact values, adding
/// only the turning points.
struct ExactTelescope {
    total: RadicalSum,
    run_start: Option<QuadraticValue>,
    last: Option<QuadraticValue>,
    dir: Ordering,
}

impl ExactTelescope {
    fn new() -> Self {
        ExactTelescope {
            total: RadicalSum::zero(),
            run_start: None,
            last: None,
            dir: Ordering::Equal,
        }
    }

    fn close_run(&mut self, end: &QuadraticValue) {
        let start = self.run_start.take().expect("run start");
        match self.dir {
            Ordering::Greater => {
                self.total.add_value(end);
                self.total.sub_value(&start);
            }
            Ordering::Less => {
                self.total.add_value(&start);
                self.total.sub_value(end);
            }
            Ordering::Equal => {}
        }
    }

    fn push(&mut self, v: &QuadraticValue) {
        let Some(last) = self.last.take() else {
            self.run_start = Some(v.clone());
            self.last = Some(v.clone());
            return;
        };
        let step = v.cmp_exact(&last);
        if step != Ordering::Equal {
            if self.dir != Ordering::Equal && step != self.dir {
                self.close_run(&last);
                self.run_start = Some(last.clone());
            }
            self.dir = step;
        }
        self.last = Some(v.clone());
    }

    fn finish(mut self) -> RadicalSum {
        if let Some(last) = self.last.take() {
            self.close_run(&last);
        }
        self.total
    }
}

/// Variation of a run of values.
pub fn variation_of(values: &[QuadraticValue]) -> RadicalSum {
    let mut t = ExactTelescope::new();
    for v in values {
        t.push(v);
    }
    t.finish()
}

impl PiecewiseMax {
    pub fn limit(&self, side: Side) -> &QuadraticValue {
        match side {
            Side::Left => &self.segments[0].start_value,
            Side::Right => &self.segments.last().expect("segment").end_value,
        }
    }

    /// Left-to-right list of one-sided limits and values.
    pub fn profile(&self) -> Vec<ProfileEntry> {
        let mut out = Vec::with_capacity(2 * self.segments.len() + self.knots.len());
        out.push(ProfileEntry {
            x: Position::NegInfinity,
            role: ProfileRole::LeftLimit,
            value: self.segments[0].start_value.clone(),
        });
        for (i, seg) in self.segments.iter().enumerate() {
            if let Some(k) = self.knots.get(i) {
                let x = Position::At(k.x.clone());
                out.push(ProfileEntry {
                    x: x.clone(),
                    role: ProfileRole::LeftLimit,
                    value: seg.end_value.clone(),
                });
                out.push(ProfileEntry {
                    x: x.clone(),
                    role: ProfileRole::Value,
                    value: k.value.clone(),
                });
                out.push(ProfileEntry {
                    x,
                    role: ProfileRole::RightLimit,
                    value: self.segments[i + 1].start_value.clone(),
                });
            }
        }
        out.push(ProfileEntry {
            x: Position::PosInfinity,
            role: ProfileRole::RightLimit,
            value: seg_last(self).end_value.clone(),
        });
        out
    }

    /// Exact total variation over the line.
    pub fn variation(&self) -> RadicalSum {
        let values: Vec<QuadraticValue> = self.profile().into_iter().map(|e| e.value).collect();
        variation_of(&values)
    }

    /// Variation over the profile entries `from..=to`.
    pub fn variation_between(&self, profile: &[ProfileEntry], from: usize, to: usize) -> RadicalSum {
        let values: Vec<QuadraticValue> = profile[from..=to].iter().map(|e| e.value.clone()).collect();
        variation_of(&values)
    }

    /// Value of the maximal function at a rational point.
    pub fn eval(&self, x: &Rational) -> QuadraticValue {
        let p = Position::at_rational(x);
        for (i, k) in self.knots.iter().enumerate() {
            match p.cmp_position(&Position::At(k.x.clone())) {
                Ordering::Equal => return k.value.clone(),
                Ordering::Less => return self.segments[i].curve.eval_q(&QuadraticValue::rational(x.clone())).unwrap(),
                Ordering::Greater => {}
            }
        }
        QuadraticValue::rational(seg_last(self).curve.eval(x).expect("defined"))
    }

    /// One-sided limit at a rational point.
    pub fn one_sided(&self, x: &Rational, side: Side) -> QuadraticValue {
        let p = Position::at_rational(x);
        for (i, k) in self.knots.iter().enumerate() {
            match p.cmp_position(&Position::At(k.x.clone())) {
                Ordering::Equal => {
                    return match side {
                        Side::Left => k.left.clone(),
                        Side::Right => k.right.clone(),
                    }
                }
                Ordering::Less => return self.segments[i].curve.eval_q(&QuadraticValue::rational(x.clone())).unwrap(),
                Ordering::Greater => {}
            }
        }
        QuadraticValue::rational(seg_last(self).curve.eval(x).expect("defined"))
    }

    /// All local maxima and minima, grouped into maximal connected sets.
    pub fn local_extrema(&self) -> Vec<Extremum> {
        let n = self.segments.len();
        // elements alternate: segment 0, knot 0, segment 1, ...
        let elem_count = 2 * n - 1;
        let flat = |e: usize| -> Option<QuadraticValue> {
            if e % 2 == 0 {
                let s = &self.segments[e / 2];
                (s.monotonicity == Monotonicity::Constant).then(|| s.start_value.clone())
            } else {
                Some(self.knots[e / 2].value.clone())
            }
        };
        let mut out = Vec::new();
        let mut e = 0;
        while e < elem_count {
            let Some(m) = flat(e) else {
                e += 1;
                continue;
            };
            let mut t = e;
            while t + 1 < elem_count && flat(t + 1).map_or(false, |v| v.cmp_exact(&m) == Ordering::Equal) {
                t += 1;
            }
            for kind in [ExtremumKind::Maximum, ExtremumKind::Minimum] {
                if self.side_ok(e, t, &m, kind, Side::Left) && self.side_ok(e, t, &m, kind, Side::Right) {
                    out.push(self.extremum(e, t, m.clone(), kind));
                }
            }
            e = t + 1;
        }
        out
    }

    fn extremum(&self, s: usize, t: usize, value: QuadraticValue, kind: ExtremumKind) -> Extremum {
        let (lo, lo_closed) = if s % 2 == 1 {
            (Position::At(self.knots[s / 2].x.clone()), true)
        } else {
            (self.segments[s / 2].start.clone(), false)
        };
        let (hi, hi_closed) = if t % 2 == 1 {
            (Position::At(self.knots[t / 2].x.clone()), true)
        } else {
            (self.segments[t / 2].end.clone(), false)
        };
        // profile: entry 0 is the limit at −∞; knot i has entries 3i+1..=3i+3
        let profile_index = if s % 2 == 1 { 3 * (s / 2) + 2 } else { 3 * (s / 2) };
        Extremum {
            kind,
            lo,
            lo_closed,
            hi,
            hi_closed,
            value,
            profile_index,
        }
    }

    /// Whether the values next to the flat run `s..=t` (element indices) are
    /// strictly beyond `m` in the direction required by `kind`.
    fn side_ok(&self, s: usize, t: usize, m: &QuadraticValue, kind: ExtremumKind, side: Side) -> bool {
        let last = 2 * self.segments.len() - 2;
        let (edge, neighbour) = match side {
            Side::Left if s == 0 => return false,
            Side::Left => (s, s - 1),
            Side::Right if t == last => return false,
            Side::Right => (t, t + 1),
        };
        // wanted: neighbour values below m for a maximum, above for a minimum
        let want = match kind {
            ExtremumKind::Maximum => Ordering::Less,
            ExtremumKind::Minimum => Ordering::Greater,
        };
        if edge % 2 == 0 {
            // run ends in a constant segment; the neighbour is a knot
            return self.knots[neighbour / 2].value.cmp_exact(m) == want;
        }
        let seg = &self.segments[neighbour / 2];
        let (v, moving_away) = match side {
            Side::Left => (&seg.end_value, seg.monotonicity == Monotonicity::Increasing),
            Side::Right => (&seg.start_value, seg.monotonicity == Monotonicity::Decreasing),
        };
        // moving_away: values fall when leaving the run
        let c = v.cmp_exact(m);
        match (seg.monotonicity, kind) {
            (Monotonicity::Constant, _) => c == want,
            (_, ExtremumKind::Maximum) if moving_away => c != Ordering::Greater,
            (_, ExtremumKind::Minimum) if !moving_away => c != Ordering::Less,
            _ => c == want,
        }
    }

    pub fn to_json_value(&self) -> Value {
        let segments: Vec<Value> = self
            .segments
            .iter()
            .map(|s| {
                json!({
                    "start": s.start.to_json(),
                    "end": s.end.to_json(),
                    "candidate": s.candidate,
                    "curve": s.curve,
                    "monotonicity": s.monotonicity,
                    "start_value": s.start_value.to_string(),
                    "end_value": s.end_value.to_string(),
                })
            })
            .collect();
        let knots: Vec<Value> = self
            .knots
            .iter()
            .map(|k| {
                let mut v = json!({
                    "x": k.x.to_string(),
                    "kind": k.kind,
                    "left": k.left.to_string(),
                    "value": k.value.to_string(),
                    "right": k.right.to_string(),
                });
                if let Some(d) = &k.root {
                    v["root"] = json!({
                        "quadratic": [format_rational(&d.a), format_rational(&d.b), format_rational(&d.c)],
                        "index": d.index,
                        "isolating_interval": [format_rational(&d.lo), format_rational(&d.hi)],
                    });
                }
                v
            })
            .collect();
        json!({
            "variant": self.variant,
            "segments": segments,
            "knots": knots,
        })
    }
}

fn seg_last(p: &PiecewiseMax) -> &Segment {
    p.segments.last().expect("segment")
}

/// Exact `Var(Mf)` for the centered operator.
pub fn var_of_m(f: &StepFunction) -> RadicalSum {
    build_piecewise(f).variation()
}

pub fn var_of_m_variant(f: &StepFunction, variant: Variant) -> RadicalSum {
    build_piecewise_variant(f, variant).variation()
}
