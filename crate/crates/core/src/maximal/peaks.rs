//! Local-maximum representatives, the tent curves `T_I` and exact audits of
//! the variation bounds built from them.

use std::cmp::Ordering;

use num_traits::Zero;
use serde::Serialize;

use super::continuous::{m_at, prepare, Window};
use super::envelope::{
    build_piecewise, Extremum, ExtremumKind, PiecewiseMax, Position, ProfileEntry, ProfileRole,
};
use crate::error::{Error, Result};
use crate::functions::{Antiderivative, StepFunction};
use crate::mobius::MobiusPiece;
use crate::numbers::rational::serde_str;
use crate::numbers::{int, QuadraticValue, RadicalSum, Rational, Sign};

/// A local maximum of `Mf` attained at the midpoint of a window whose edges
/// are the left end of piece `k_lo` and the right end of piece `k_hi`
/// (pieces numbered from 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Representative {
    #[serde(with = "serde_str")]
    pub x: Rational,
    pub k_lo: usize,
    pub k_hi: usize,
    pub window: Window,
    #[serde(with = "serde_str")]
    pub value: Rational,
}

fn require_alternating(g: &StepFunction) -> Result<()> {
    if g.is_alternating() {
        Ok(())
    } else {
        Err(Error::ClassViolation(
            "piece values must alternate with zeros (a_k * a_(k+1) = 0 for adjacent pieces)".into(),
        ))
    }
}

/// Representatives of all local maxima of `Mf` for `f` in the alternating
/// class.
pub fn representatives(f: &StepFunction) -> Result<Vec<Representative>> {
    let g = prepare(f);
    require_alternating(&g)?;
    local_maximum_representatives(f)
}

/// Same as [`representatives`] without the class check. Fails if some local
/// maximum has no anchored window.
pub fn local_maximum_representatives(f: &StepFunction) -> Result<Vec<Representative>> {
    let g = prepare(f);
    let p = build_piecewise(&g);
    representatives_of(&g, &p)
}

fn representatives_of(g: &StepFunction, p: &PiecewiseMax) -> Result<Vec<Representative>> {
    let t = g.breakpoints();
    let alpha = g.values();
    let big = Antiderivative::new(g);
    // (k_lo, k_hi) pairs, shortest window first, then leftmost
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for k1 in 1..=alpha.len() {
        for k2 in k1..=alpha.len() {
            pairs.push((k1, k2));
        }
    }
    pairs.sort_by(|x, y| {
        let lx = &t[x.1] - &t[x.0 - 1];
        let ly = &t[y.1] - &t[y.0 - 1];
        lx.cmp(&ly).then(x.0.cmp(&y.0))
    });
    let mut out = Vec::new();
    for ext in p.local_extrema() {
        if ext.kind != ExtremumKind::Maximum {
            continue;
        }
        let m = ext.value.as_rational().cloned().ok_or_else(|| {
            Error::Degenerate(format!("local maximum with irrational value {}", ext.value))
        })?;
        let found = pairs.iter().find(|&&(k1, k2)| {
            let (l, r) = (&t[k1 - 1], &t[k2]);
            let x = (l + r) / int(2);
            alpha[k1 - 1] >= m
                && alpha[k2 - 1] >= m
                && big.integral(l, r) / (r - l) == m
                && ext.contains(&QuadraticValue::rational(x))
        });
        let &(k1, k2) = found.ok_or_else(|| {
            Error::Degenerate(format!("local maximum with value {m} has no anchored window"))
        })?;
        let window = Window::from_endpoints(&t[k1 - 1], &t[k2]);
        debug_assert_eq!(m_at(g, &window.center), m);
        out.push(Representative {
            x: window.center.clone(),
            k_lo: k1,
            k_hi: k2,
            window,
            value: m,
        });
    }
    Ok(out)
}

/// `T_I(x) = |I| / |J_I(x)|` for the interval `I = (l, r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TCurve {
    #[serde(with = "serde_str")]
    pub l: Rational,
    #[serde(with = "serde_str")]
    pub r: Rational,
}

impl TCurve {
    pub fn new(l: Rational, r: Rational) -> Result<TCurve> {
        if l >= r {
            return Err(Error::malformed("interval", "need l < r"));
        }
        Ok(TCurve { l, r })
    }

    pub fn center(&self) -> Rational {
        (&self.l + &self.r) / int(2)
    }

    fn len(&self) -> Rational {
        &self.r - &self.l
    }

    /// The branch of `T_I` valid on the side of the center containing `x`.
    fn branch(&self, right: bool) -> MobiusPiece {
        if right {
            MobiusPiece::new(Rational::zero(), self.len(), int(2), -(&self.l * int(2)))
        } else {
            MobiusPiece::new(Rational::zero(), self.len(), int(-2), &self.r * int(2))
        }
    }

    pub fn value(&self, x: &Rational) -> Rational {
        self.branch(*x >= self.center()).eval(x).expect("positive denominator")
    }

    pub fn value_at(&self, x: &Position) -> QuadraticValue {
        match x {
            Position::At(x) => {
                let right = x.cmp_rational(&self.center()) != Ordering::Less;
                self.branch(right).eval_q(x).expect("positive denominator")
            }
            _ => QuadraticValue::rational(Rational::zero()),
        }
    }

    /// Variation over the closed stretch from `lo` to `hi` (`lo ≤ hi`),
    /// either end possibly infinite.
    pub fn var_over(&self, lo: &Position, hi: &Position) -> RadicalSum {
        let c = Position::At(QuadraticValue::rational(self.center()));
        let (tu, tw) = (self.value_at(lo), self.value_at(hi));
        let mut out = RadicalSum::zero();
        if hi.cmp_position(&c) != Ordering::Greater {
            out.add_value(&tw);
            out.sub_value(&tu);
        } else if lo.cmp_position(&c) != Ordering::Less {
            out.add_value(&tu);
            out.sub_value(&tw);
        } else {
            out.add_rational(&int(2));
            out.sub_value(&tu);
            out.sub_value(&tw);
        }
        out
    }
}

pub fn t_value(l: &Rational, r: &Rational, x: &Rational) -> Result<Rational> {
    Ok(TCurve::new(l.clone(), r.clone())?.value(x))
}

/// Variation of `T_I` over `[lo, hi]`; `None` stands for an infinite end.
pub fn var_t_over(l: &Rational, r: &Rational, lo: Option<&Rational>, hi: Option<&Rational>) -> Result<Rational> {
    let t = TCurve::new(l.clone(), r.clone())?;
    let lo = lo.map_or(Position::NegInfinity, |x| Position::At(QuadraticValue::rational(x.clone())));
    let hi = hi.map_or(Position::PosInfinity, |x| Position::At(QuadraticValue::rational(x.clone())));
    Ok(t
        .var_over(&lo, &hi)
        .as_rational()
        .cloned()
        .expect("rational ends give a rational variation"))
}

/// One audited inequality `lhs ≤ rhs` or identity `lhs = rhs`.
#[derive(Clone, Debug, Serialize)]
pub struct AuditLine {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl AuditLine {
    fn le(label: String, lhs: &RadicalSum, rhs: &RadicalSum) -> AuditLine {
        let mut d = rhs.clone();
        d.sub_sum(lhs);
        AuditLine {
            label,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            holds: d.sign() != Sign::Negative,
        }
    }

    fn eq(label: String, lhs: &RadicalSum, rhs: &RadicalSum) -> AuditLine {
        let mut d = rhs.clone();
        d.sub_sum(lhs);
        AuditLine {
            label,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            holds: d.is_zero(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub representatives: Vec<Representative>,
    /// Chosen local minima between consecutive representatives.
    pub minima: Vec<String>,
    pub lines: Vec<AuditLine>,
    pub holds: bool,
}

/// Representatives, the minima `y_n` between them and their profile
/// indices.
struct Skeleton {
    p: PiecewiseMax,
    profile: Vec<ProfileEntry>,
    reps: Vec<Representative>,
    rep_index: Vec<usize>,
    minima: Vec<(Position, QuadraticValue, usize)>,
}

fn skeleton(g: &StepFunction) -> Result<Skeleton> {
    let p = build_piecewise(g);
    let reps = representatives_of(g, &p)?;
    let profile = p.profile();
    let value_index = |x: &Rational| {
        let target = QuadraticValue::rational(x.clone());
        profile
            .iter()
            .position(|e| e.role == ProfileRole::Value && e.x.as_value() == Some(&target))
            .expect("representatives are event points")
    };
    let rep_index: Vec<usize> = reps.iter().map(|r| value_index(&r.x)).collect();
    let mut minima = Vec::new();
    for w in rep_index.windows(2) {
        // leftmost point of the lowest value strictly between the two
        let mut best: Option<usize> = None;
        for i in w[0] + 1..w[1] {
            if profile[i].role != ProfileRole::Value {
                continue;
            }
            if best.map_or(true, |b| profile[i].value.cmp_exact(&profile[b].value) == Ordering::Less) {
                best = Some(i);
            }
        }
        let i = best.expect("a knot between two representatives");
        minima.push((profile[i].x.clone(), profile[i].value.clone(), i));
    }
    Ok(Skeleton {
        p,
        profile,
        reps,
        rep_index,
        minima,
    })
}

fn value_sum(v: &QuadraticValue) -> RadicalSum {
    let mut s = RadicalSum::zero();
    s.add_value(v);
    s
}

/// Checks the local bounds of `Mf(x_n) − Mf(y_n)` by the weighted
/// variations of the tent curves of the pieces.
pub fn tent_bound_audit(f: &StepFunction) -> Result<AuditReport> {
    let g = prepare(f);
    require_alternating(&g)?;
    let sk = skeleton(&g)?;
    let t = g.breakpoints();
    let alpha = g.values();
    let tents: Vec<TCurve> = (0..alpha.len())
        .map(|k| TCurve::new(t[k].clone(), t[k + 1].clone()).expect("increasing breakpoints"))
        .collect();
    let skip_first = !alpha.is_empty() && alpha[0] <= *g.a();
    let bound = |lo: &Position, hi: &Position| {
        let mut s = RadicalSum::zero();
        for (k, tent) in tents.iter().enumerate() {
            if k == 0 && skip_first {
                continue;
            }
            s.add_sum(&tent.var_over(lo, hi).scale(&alpha[k]));
        }
        s
    };
    let pos = |r: &Representative| Position::At(QuadraticValue::rational(r.x.clone()));
    let mut lines = Vec::new();
    if let (Some(first), Some(last)) = (sk.reps.first(), sk.reps.last()) {
        lines.push(AuditLine::le(
            format!("Mf(x_1) <= sum a_k Var_(-inf,x_1](T_k), x_1 = {}", first.x),
            &RadicalSum::from(first.value.clone()),
            &bound(&Position::NegInfinity, &pos(first)),
        ));
        for (n, (y, my, _)) in sk.minima.iter().enumerate() {
            let (xa, xb) = (&sk.reps[n], &sk.reps[n + 1]);
            let mut d = RadicalSum::from(xa.value.clone());
            d.sub_value(my);
            lines.push(AuditLine::le(
                format!("Mf(x_{}) - Mf(y_{}) <= sum a_k Var_[x,y](T_k)", n + 1, n + 2),
                &d,
                &bound(&pos(xa), y),
            ));
            let mut d = RadicalSum::from(xb.value.clone());
            d.sub_value(my);
            lines.push(AuditLine::le(
                format!("Mf(x_{}) - Mf(y_{}) <= sum a_k Var_[y,x](T_k)", n + 2, n + 2),
                &d,
                &bound(y, &pos(xb)),
            ));
        }
        lines.push(AuditLine::le(
            format!("Mf(x_N) <= sum a_k Var_[x_N,inf)(T_k), x_N = {}", last.x),
            &RadicalSum::from(last.value.clone()),
            &bound(&pos(last), &Position::PosInfinity),
        ));
    }
    Ok(report(sk, lines))
}

/// Checks that the variation of `Mf` splits into the two outer stretches
/// plus `Mf(x_(n−1)) − 2 Mf(y_n) + Mf(x_n)` over consecutive
/// representatives. Applies to any step function whose local maxima all
/// have anchored windows.
pub fn var_split_audit(f: &StepFunction) -> Result<AuditReport> {
    let g = prepare(f);
    let sk = skeleton(&g)?;
    let total = sk.p.variation();
    let mut lines = Vec::new();
    if let (Some(&i1), Some(&i_n)) = (sk.rep_index.first(), sk.rep_index.last()) {
        let left = sk.p.variation_between(&sk.profile, 0, i1);
        let right = sk.p.variation_between(&sk.profile, i_n, sk.profile.len() - 1);
        let mut sum = left.clone();
        for (n, (_, my, _)) in sk.minima.iter().enumerate() {
            let mut term = RadicalSum::from(sk.reps[n].value.clone());
            term.add_rational(&sk.reps[n + 1].value);
            term.sub_sum(&value_sum(my).scale(&int(2)));
            lines.push(AuditLine {
                label: format!("Mf(x_{}) - 2 Mf(y_{}) + Mf(x_{})", n + 1, n + 2, n + 2),
                lhs: term.to_string(),
                rhs: String::new(),
                holds: true,
            });
            sum.add_sum(&term);
        }
        sum.add_sum(&right);
        lines.insert(
            0,
            AuditLine {
                label: "Var_(-inf,x_1](Mf)".into(),
                lhs: left.to_string(),
                rhs: String::new(),
                holds: true,
            },
        );
        lines.push(AuditLine {
            label: "Var_[x_N,inf)(Mf)".into(),
            lhs: right.to_string(),
            rhs: String::new(),
            holds: true,
        });
        lines.push(AuditLine::eq("Var(Mf) = split sum".into(), &total, &sum));
    } else {
        lines.push(AuditLine {
            label: "no local maxima".into(),
            lhs: total.to_string(),
            rhs: String::new(),
            holds: true,
        });
    }
    Ok(report(sk, lines))
}

fn report(sk: Skeleton, lines: Vec<AuditLine>) -> AuditReport {
    AuditReport {
        holds: lines.iter().all(|l| l.holds),
        minima: sk
            .minima
            .iter()
            .map(|(x, v, _)| format!("{} @ {}", v, x.as_value().map_or("?".into(), |x| x.to_string())))
            .collect(),
        representatives: sk.reps,
        lines,
    }
}

/// Local extrema of the centered maximal function with their values.
pub fn local_extrema(f: &StepFunction) -> Vec<Extremum> {
    build_piecewise(f).local_extrema()
}
