//! Pointwise evaluation of the maximal operators on step functions and the
//! candidate curves whose upper envelope is the maximal function.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::Variant;
use crate::functions::{Antiderivative, Side, StepFunction};
use crate::mobius::MobiusPiece;
use crate::numbers::rational::{self, serde_str};
use crate::numbers::{int, Rational};

/// The window `[center − radius, center + radius]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Window {
    #[serde(with = "serde_str")]
    pub center: Rational,
    #[serde(with = "serde_str")]
    pub radius: Rational,
}

impl Window {
    pub fn from_endpoints(l: &Rational, r: &Rational) -> Window {
        Window {
            center: (l + r) / int(2),
            radius: (r - l) / int(2),
        }
    }
    pub fn l(&self) -> Rational {
        &self.center - &self.radius
    }
    pub fn r(&self) -> Rational {
        &self.center + &self.radius
    }
    pub fn len(&self) -> Rational {
        &self.radius * int(2)
    }
    pub fn is_empty(&self) -> bool {
        self.radius.is_zero()
    }
}

/// Identity of a candidate curve. The derived order is the tie-break order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateKind {
    /// Windows whose left edge is the breakpoint with this index.
    LeftAnchored(usize),
    /// Windows whose right edge is the breakpoint with this index.
    RightAnchored(usize),
    /// A window between two breakpoints (uncentered operator only).
    Between(usize, usize),
    /// Shrinking windows.
    Local,
    /// Windows exhausting the line.
    GlobalLimit,
}

/// A candidate curve as a list of Möbius pieces. `from = None` means the
/// piece extends to `−∞`, `to = None` to `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateCurve {
    pub kind: CandidateKind,
    pub pieces: Vec<CurvePiece>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurvePiece {
    #[serde(with = "crate::numbers::rational::serde_opt")]
    pub from: Option<Rational>,
    #[serde(with = "crate::numbers::rational::serde_opt")]
    pub to: Option<Rational>,
    pub curve: MobiusPiece,
}

impl CandidateCurve {
    /// Value at `x`, or `None` when `x` lies outside the curve's domain.
    /// The local candidate is not a single curve and always returns `None`;
    /// use [`local_value`] for it.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        // anchored windows need a positive radius
        let excluded = match self.kind {
            CandidateKind::LeftAnchored(_) => self.pieces.first().and_then(|p| p.from.as_ref()),
            CandidateKind::RightAnchored(_) => self.pieces.last().and_then(|p| p.to.as_ref()),
            _ => None,
        };
        if excluded == Some(x) {
            return None;
        }
        self.pieces
            .iter()
            .find(|p| {
                p.from.as_ref().map_or(true, |f| f <= x) && p.to.as_ref().map_or(true, |t| x <= t)
            })
            .and_then(|p| p.curve.eval(x))
    }
}

/// `(|f|(x−) + |f|(x+))/2`.
pub fn local_value(f: &StepFunction, x: &Rational) -> Rational {
    let g = f.abs();
    (g.one_sided_value(x, Side::Left) + g.one_sided_value(x, Side::Right)) / int(2)
}

/// `|f|` with equal neighbouring cells merged; all operators work on this.
pub(crate) fn prepare(f: &StepFunction) -> StepFunction {
    f.abs().normalize()
}

/// The centered maximal function at `x`.
pub fn m_at(f: &StepFunction, x: &Rational) -> Rational {
    m_at_eval(f, x).0
}

/// `Mf(x)` with the smallest maximizing window; `None` if the value is only
/// reached as the radius tends to `0` or `∞`.
pub fn m_at_eval(f: &StepFunction, x: &Rational) -> (Rational, Option<Window>) {
    let g = prepare(f);
    let big = Antiderivative::new(&g);
    let local = (g.one_sided_value(x, Side::Left) + g.one_sided_value(x, Side::Right)) / int(2);
    let mut best = (local, None);
    let mut radii: Vec<Rational> = g
        .breakpoints()
        .iter()
        .map(|t| (x - t).abs())
        .filter(|r| r.is_positive())
        .collect();
    radii.sort();
    radii.dedup();
    for r in radii {
        let avg = big.integral(&(x - &r), &(x + &r)) / (&r * int(2));
        if avg > best.0 {
            best = (
                avg,
                Some(Window {
                    center: x.clone(),
                    radius: r,
                }),
            );
        }
    }
    let global = (g.a() + g.b()) / int(2);
    if global > best.0 {
        best = (global, None);
    }
    best
}

/// Maximal function of the chosen variant at `x`.
pub fn m_variant_at(f: &StepFunction, x: &Rational, variant: Variant) -> Rational {
    match variant {
        Variant::Centered => m_at(f, x),
        Variant::OneSided => m_one_sided_operator_at(f, x),
        Variant::Uncentered => m_uncentered_at(f, x),
    }
}

/// `sup_{r>0} (1/r) ∫_x^{x+r} |f|`.
pub fn m_one_sided_operator_at(f: &StepFunction, x: &Rational) -> Rational {
    let g = prepare(f);
    let big = Antiderivative::new(&g);
    let mut best = rational::max(&g.value_at(x), g.b());
    for t in g.breakpoints().iter().filter(|t| *t > x) {
        best = best.max(big.integral(x, t) / (t - x));
    }
    best
}

/// Supremum of averages over all windows containing `x`.
pub fn m_uncentered_at(f: &StepFunction, x: &Rational) -> Rational {
    let g = prepare(f);
    let big = Antiderivative::new(&g);
    let mut best = rational::max(g.a(), g.b());
    best = best.max(g.one_sided_value(x, Side::Left));
    best = best.max(g.value_at(x));
    let ls: Vec<&Rational> = g.breakpoints().iter().filter(|t| *t < x).chain([x]).collect();
    let rs: Vec<&Rational> = g.breakpoints().iter().filter(|t| *t > x).chain([x]).collect();
    let fx = big.at(x);
    let fl: Vec<Rational> = ls.iter().map(|l| big.at(l)).collect();
    for (l, f_l) in ls.iter().zip(&fl) {
        for r in &rs {
            if l < r {
                let f_r = if *r == x { fx.clone() } else { big.at(r) };
                best = best.max((f_r - f_l) / (*r - *l));
            }
        }
    }
    best
}

/// Centered maximal function restricted to radii `(2j − 1)/2^(N+1)`, `j ≥ 1`.
pub fn m_restricted_at(f: &StepFunction, x: &Rational, n: u32) -> Rational {
    let g = prepare(f);
    let big = Antiderivative::new(&g);
    let h = rational::pow2(n as i64 + 1);
    let mut radii: Vec<Rational> = g.breakpoints().iter().map(|t| (x - t).abs()).collect();
    radii.push(Rational::zero());
    let mut admissible: Vec<Rational> = Vec::new();
    for rho in radii {
        let scaled = &rho * &h;
        let mut down = rational::floor(&scaled);
        if down.is_even() {
            down -= 1;
        }
        let mut up = rational::ceil(&scaled);
        if up.is_even() {
            up += 1;
        }
        for k in [down, up] {
            if k.is_positive() {
                admissible.push(Rational::from_integer(k) / &h);
            }
        }
    }
    admissible.sort();
    admissible.dedup();
    let mut best = (g.a() + g.b()) / int(2);
    for r in admissible {
        best = best.max(big.integral(&(x - &r), &(x + &r)) / (&r * int(2)));
    }
    best
}

use num_integer::Integer;

/// Abscissae where the candidate set of `variant` changes.
pub(crate) fn event_points(g: &StepFunction, variant: Variant) -> Vec<Rational> {
    let t = g.breakpoints();
    let mut out: Vec<Rational> = match variant {
        Variant::Centered => {
            let mut v = Vec::with_capacity(t.len() * (t.len() + 1) / 2);
            for i in 0..t.len() {
                for k in i..t.len() {
                    v.push((&t[i] + &t[k]) / int(2));
                }
            }
            v
        }
        _ => t.to_vec(),
    };
    out.sort();
    out.dedup();
    out
}

/// Candidate curves active on the open interval `(lo, hi)` between two
/// consecutive event points. `sample` is any point inside it. Every curve
/// has a positive denominator on the interval.
pub(crate) fn interval_candidates(
    g: &StepFunction,
    big: &Antiderivative,
    variant: Variant,
    lo: Option<&Rational>,
    hi: Option<&Rational>,
    sample: &Rational,
) -> Vec<(CandidateKind, MobiusPiece)> {
    let t = g.breakpoints();
    let left_of = |x: &Rational| lo.map_or(false, |lo| x <= lo);
    let right_of = |x: &Rational| hi.map_or(false, |hi| x >= hi);
    let mut out = Vec::new();
    match variant {
        Variant::Centered => {
            for (i, ti) in t.iter().enumerate() {
                if left_of(ti) {
                    let y = sample * int(2) - ti;
                    let (base, v, anc) = big.affine_on_cell(g.cell_of(&y));
                    let p = v * int(2);
                    let q = base - v * (ti + anc) - big.at(ti);
                    out.push((
                        CandidateKind::LeftAnchored(i),
                        MobiusPiece::new(p, q, int(2), -(ti * int(2))),
                    ));
                }
            }
            for (j, tj) in t.iter().enumerate() {
                if right_of(tj) {
                    let y = sample * int(2) - tj;
                    let (base, v, anc) = big.affine_on_cell(g.cell_of(&y));
                    let p = -(v * int(2));
                    let q = big.at(tj) - base + v * (tj + anc);
                    out.push((
                        CandidateKind::RightAnchored(j),
                        MobiusPiece::new(p, q, int(-2), tj * int(2)),
                    ));
                }
            }
            out.push((
                CandidateKind::GlobalLimit,
                MobiusPiece::constant((g.a() + g.b()) / int(2)),
            ));
        }
        Variant::OneSided | Variant::Uncentered => {
            let (base, v, anc) = big.affine_on_cell(g.cell_of(sample));
            // F(x) = v·x + c0 on the cell
            let c0 = base - v * anc;
            if variant == Variant::Uncentered {
                for (i, ti) in t.iter().enumerate() {
                    if left_of(ti) {
                        out.push((
                            CandidateKind::LeftAnchored(i),
                            MobiusPiece::new(v.clone(), &c0 - big.at(ti), Rational::one(), -ti.clone()),
                        ));
                    }
                }
            }
            for (j, tj) in t.iter().enumerate() {
                if right_of(tj) {
                    out.push((
                        CandidateKind::RightAnchored(j),
                        MobiusPiece::new(-v.clone(), big.at(tj) - &c0, int(-1), tj.clone()),
                    ));
                }
            }
            if variant == Variant::Uncentered {
                let mut between: Option<(CandidateKind, Rational)> = None;
                for (i, ti) in t.iter().enumerate().filter(|(_, ti)| left_of(ti)) {
                    for (j, tj) in t.iter().enumerate().filter(|(_, tj)| right_of(tj)) {
                        let avg = big.integral(ti, tj) / (tj - ti);
                        if between.as_ref().map_or(true, |(_, b)| avg > *b) {
                            between = Some((CandidateKind::Between(i, j), avg));
                        }
                    }
                }
                if let Some((k, v)) = between {
                    out.push((k, MobiusPiece::constant(v)));
                }
                out.push((
                    CandidateKind::GlobalLimit,
                    MobiusPiece::constant(rational::max(g.a(), g.b())),
                ));
            } else {
                out.push((CandidateKind::GlobalLimit, MobiusPiece::constant(g.b().clone())));
            }
        }
    }
    out
}

/// Value at `x` of the maximal function of `variant` (no candidate
/// pruning, no envelope).
pub(crate) fn point_value(g: &StepFunction, x: &Rational, variant: Variant) -> Rational {
    m_variant_at(g, x, variant)
}

fn sample_between(lo: Option<&Rational>, hi: Option<&Rational>) -> Rational {
    match (lo, hi) {
        (Some(l), Some(h)) => (l + h) / int(2),
        (Some(l), None) => l + int(1),
        (None, Some(h)) => h - int(1),
        (None, None) => Rational::zero(),
    }
}

/// One-sided limit `Mf(x±)` of the centered maximal function.
pub fn m_one_sided(f: &StepFunction, x: &Rational, side: Side) -> Rational {
    m_variant_one_sided(f, x, side, Variant::Centered)
}

pub fn m_variant_one_sided(f: &StepFunction, x: &Rational, side: Side, variant: Variant) -> Rational {
    let g = prepare(f);
    let big = Antiderivative::new(&g);
    let events = event_points(&g, variant);
    let (lo, hi) = match side {
        Side::Left => (events.iter().filter(|e| *e < x).last(), Some(x)),
        Side::Right => (Some(x), events.iter().find(|e| *e > x)),
    };
    let sample = sample_between(lo, hi);
    interval_candidates(&g, &big, variant, lo, hi, &sample)
        .into_iter()
        .map(|(_, c)| c.eval(x).expect("candidate defined at the interval end"))
        .max()
        .expect("at least one candidate")
}

/// All candidate curves of the centered operator on `|f|`: one per
/// breakpoint and side, the local curve (no pieces) and the limit constant.
pub fn candidate_curves(f: &StepFunction) -> Vec<CandidateCurve> {
    let g = prepare(f);
    let big = Antiderivative::new(&g);
    let t = g.breakpoints();
    let mut out = Vec::new();
    let mid = |i: usize, k: usize| (&t[i] + &t[k]) / int(2);
    for i in 0..t.len() {
        // on ((t_i + t_k)/2, (t_i + t_{k+1})/2) the far edge is in cell k
        let mut pieces = Vec::new();
        for k in i..t.len() {
            let from = mid(i, k);
            let to = if k + 1 < t.len() { Some(mid(i, k + 1)) } else { None };
            let sample = sample_between(Some(&from), to.as_ref());
            let lo = from.clone();
            let cands = interval_candidates(&g, &big, Variant::Centered, Some(&lo), None, &sample);
            let curve = cands
                .into_iter()
                .find(|(kind, _)| *kind == CandidateKind::LeftAnchored(i))
                .expect("anchored curve")
                .1;
            pieces.push(CurvePiece {
                from: Some(from),
                to,
                curve,
            });
        }
        out.push(CandidateCurve {
            kind: CandidateKind::LeftAnchored(i),
            pieces,
        });
    }
    for j in 0..t.len() {
        let mut pieces = Vec::new();
        for k in (0..=j).rev() {
            let to = mid(k, j);
            let from = if k > 0 { Some(mid(k - 1, j)) } else { None };
            let sample = sample_between(from.as_ref(), Some(&to));
            let cands = interval_candidates(&g, &big, Variant::Centered, None, Some(&to), &sample);
            let curve = cands
                .into_iter()
                .find(|(kind, _)| *kind == CandidateKind::RightAnchored(j))
                .expect("anchored curve")
                .1;
            pieces.push(CurvePiece {
                from,
                to: Some(to),
                curve,
            });
        }
        pieces.reverse();
        out.push(CandidateCurve {
            kind: CandidateKind::RightAnchored(j),
            pieces,
        });
    }
    out.push(CandidateCurve {
        kind: CandidateKind::Local,
        pieces: Vec::new(),
    });
    out.push(CandidateCurve {
        kind: CandidateKind::GlobalLimit,
        pieces: vec![CurvePiece {
            from: None,
            to: None,
            curve: MobiusPiece::constant((g.a() + g.b()) / int(2)),
        }],
    });
    out
}
