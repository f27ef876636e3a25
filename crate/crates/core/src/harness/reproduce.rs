//! The worked examples: the optimality family, the tall plateau with two
//! bumps, the spike family for the one-sided and uncentered operators, and
//! integer-point agreement under extension.

use std::fmt;

use serde::Serialize;

use super::families::{big_g_n, bump_on_plateau, g_n};
use crate::maximal::continuous::m_at;
use crate::maximal::discrete::m_discrete_values;
use crate::maximal::envelope::{build_piecewise, var_of_m, ExtremumKind};
use crate::maximal::Variant;
use crate::numbers::quadratic::{QuadraticValue, RadicalSum};
use crate::numbers::rational::{format_rational, max};
use crate::numbers::{int, rat, Rational};
use crate::transference::extend;

#[derive(Clone, Debug, Serialize)]
pub struct ReproItem {
    pub group: &'static str,
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproductionReport {
    pub items: Vec<ReproItem>,
    pub holds: bool,
}

impl ReproductionReport {
    pub fn failures(&self) -> impl Iterator<Item = &ReproItem> {
        self.items.iter().filter(|i| !i.holds)
    }
}

impl fmt::Display for ReproductionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.items {
            let tag = if i.holds { "ok" } else { "MISMATCH" };
            writeln!(f, "[{}] {} {}: expected {} got {}", tag, i.group, i.label, i.expected, i.actual)?;
        }
        let bad = self.failures().count();
        write!(f, "{} items, {} mismatches", self.items.len(), bad)
    }
}

struct Items(Vec<ReproItem>);

impl Items {
    fn push(&mut self, group: &'static str, label: String, expected: String, actual: String) {
        let holds = expected == actual;
        self.0.push(ReproItem {
            group,
            label,
            expected,
            actual,
            holds,
        });
    }

    fn flag(&mut self, group: &'static str, label: String, holds: bool) {
        let s = |b: bool| if b { "true" } else { "false" }.to_string();
        self.push(group, label, s(true), s(holds));
    }
}

/// Tail pairs `a ≥ b ≥ 0` from `{0, 1/2, 1, 2}` with heights `N ≥ a`.
pub fn optimality_grid(heights: &[i64]) -> Vec<(Rational, Rational, i64)> {
    let tails = [int(0), rat(1, 2), int(1), int(2)];
    let mut out = Vec::new();
    for a in &tails {
        for b in &tails {
            for &n in heights {
                if b <= a && a <= &int(n) {
                    out.push((a.clone(), b.clone(), n));
                }
            }
        }
    }
    out
}

fn optimality(items: &mut Items) {
    for (a, b, n) in optimality_grid(&[1, 2, 5, 17]) {
        let g = g_n(&a, &b, &int(n));
        let tag = format!("a={} b={} N={n}", format_rational(&a), format_rational(&b));
        let var_g = int(2 * n) - &a - &b;
        let var_mg = int(2 * n) - &a - (&a + &b) / int(2);
        items.push("optimality", format!("Var(g) {tag}"), format_rational(&var_g), format_rational(&g.total_var()));
        items.push("optimality", format!("Var(Mg) {tag}"), format_rational(&var_mg), var_of_m(&g).to_string());
    }
}

fn limitation(items: &mut Items) {
    let c = int(1_000_000);
    let g = bump_on_plateau(&c);
    let p = build_piecewise(&g);
    let ext = p.local_extrema();
    let q = |x: Rational| QuadraticValue::rational(x);
    let expected_max = [(rat(-3, 2), &c + int(1)), (int(0), &c + rat(1, 2)), (rat(3, 2), &c + int(1))];
    let expected_min = [(rat(-1, 2), &c + rat(1, 3)), (rat(1, 2), &c + rat(1, 3))];
    for (kind, expected) in [
        (ExtremumKind::Maximum, &expected_max[..]),
        (ExtremumKind::Minimum, &expected_min[..]),
    ] {
        let found: Vec<_> = ext.iter().filter(|e| e.kind == kind).collect();
        items.push(
            "limitation",
            format!("number of local {kind:?}"),
            expected.len().to_string(),
            found.len().to_string(),
        );
        for (x, v) in expected {
            let hit = found.iter().find(|e| e.contains(&q(x.clone())));
            items.push(
                "limitation",
                format!("{kind:?} at {}", format_rational(x)),
                format_rational(v),
                hit.map_or("absent".into(), |e| e.value.to_string()),
            );
        }
    }
    let expected = int(2) * &c + int(4) - rat(1, 3);
    items.push("limitation", "Var(Mg)".into(), format_rational(&expected), p.variation().to_string());
}

fn spike_family(items: &mut Items) {
    for (a, b, n) in optimality_grid(&[2, 5, 17]).into_iter().chain([(int(0), int(2), 5), (rat(1, 2), int(1), 2)]) {
        let g = big_g_n(&a, &b, &int(n));
        let (lo, hi) = (-3 * n - 5, 3 * n + 5);
        let one = m_discrete_values(&g, lo, hi, Variant::OneSided);
        let unc = m_discrete_values(&g, lo, hi, Variant::Uncentered);
        let tag = format!("a={} b={} N={n}", format_rational(&a), format_rational(&b));
        let mut one_ok = true;
        let mut unc_ok = true;
        for (i, k) in (lo..=hi).enumerate() {
            let v = g.value_at(k);
            one_ok &= one[i] >= max(v, &b);
            unc_ok &= unc[i] >= max(&max(v, &a), &b);
        }
        items.flag("spike", format!("one-sided >= max(G, b) {tag}"), one_ok);
        items.flag("spike", format!("uncentered >= max(G, a, b) {tag}"), unc_ok);
    }
}

fn extension(items: &mut Items) {
    for (a, b, n) in optimality_grid(&[2, 5, 17]) {
        let g = big_g_n(&a, &b, &int(n));
        let f = extend(&g);
        let (lo, hi) = (-2 * n - 4, 2 * n + 4);
        let discrete = m_discrete_values(&g, lo, hi, Variant::Centered);
        let agree = (lo..=hi).zip(&discrete).all(|(k, v)| &m_at(&f, &int(k)) == v);
        let tag = format!("a={} b={} N={n}", format_rational(&a), format_rational(&b));
        items.flag("extension", format!("Mg(n) = MG(n) {tag}"), agree);
    }
}

pub fn reproduce_examples() -> ReproductionReport {
    let mut items = Items(Vec::new());
    optimality(&mut items);
    limitation(&mut items);
    spike_family(&mut items);
    extension(&mut items);
    let holds = items.0.iter().all(|i| i.holds);
    ReproductionReport { items: items.0, holds }
}

/// `Var(M g_N)` for the two-step family.
pub fn optimality_values(a: &Rational, b: &Rational, n: i64) -> (Rational, RadicalSum) {
    let g = g_n(a, b, &int(n));
    (g.total_var(), var_of_m(&g))
}
