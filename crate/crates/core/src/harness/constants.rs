//! Lower bounds for `C` and upper bounds for `c_a^b` read off the extremal
//! families. `Var(Mf) ≤ C·Var(f) − c` along a family with `Var(f) → ∞` and
//! bounded gap forces `C ≥ lim Var(Mf)/Var(f)`, and with `C = 1` it forces
//! `c ≤ Var(f) − Var(Mf)` at every member.

use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::Value;

use super::families::{big_g_n, g_n};
use super::generate::Domain;
use crate::error::{Error, Result};
use crate::functions::Instance;
use crate::maximal::discrete::var_of_m_discrete_variant;
use crate::maximal::envelope::var_of_m_variant;
use crate::maximal::Variant;
use crate::numbers::quadratic::RadicalSum;
use crate::numbers::rational::{max, serde_str};
use crate::numbers::{int, Rational};
use crate::transference::extend;

#[derive(Clone, Debug, Serialize)]
pub struct FamilyPoint {
    pub n: i64,
    #[serde(with = "serde_str")]
    pub var_f: Rational,
    pub var_mf: String,
    pub ratio: String,
    pub ratio_approx: f64,
    /// `Var(f) − Var(Mf)`.
    pub gap: String,
    #[serde(skip)]
    pub ratio_exact: RadicalSum,
    #[serde(skip)]
    pub gap_exact: RadicalSum,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantEstimate {
    pub operator: Variant,
    pub domain: Domain,
    #[serde(with = "serde_str")]
    pub a: Rational,
    #[serde(with = "serde_str")]
    pub b: Rational,
    pub points: Vec<FamilyPoint>,
    /// Largest ratio along the family.
    pub c_lower: String,
    /// Gap at the largest `N`.
    pub c_ab_upper: String,
    pub witness_n: i64,
    pub witness: Value,
}

/// The family member at height `n`: for the centered operator on ℝ the
/// two-step `g_N`, otherwise the single spike `G_N` or its extension.
pub fn family_member(operator: Variant, domain: Domain, a: &Rational, b: &Rational, n: i64) -> Instance {
    let h = int(n);
    match (operator, domain) {
        (Variant::Centered, Domain::Continuous) => Instance::Continuous(g_n(a, b, &h)),
        (_, Domain::Continuous) => Instance::Continuous(extend(&big_g_n(a, b, &h))),
        (_, Domain::Discrete) => Instance::Discrete(big_g_n(a, b, &h)),
    }
}

fn var_m(instance: &Instance, operator: Variant) -> RadicalSum {
    match instance {
        Instance::Continuous(f) => var_of_m_variant(f, operator),
        Instance::Discrete(g) => RadicalSum::from(var_of_m_discrete_variant(g, operator)),
    }
}

pub fn estimate_constants(
    operator: Variant,
    domain: Domain,
    a: &Rational,
    b: &Rational,
    ns: &[i64],
) -> Result<ConstantEstimate> {
    if a.is_negative() || b.is_negative() {
        return Err(Error::malformed("a/b", "tails must be nonnegative"));
    }
    let top = max(a, b);
    if ns.is_empty() || ns.iter().any(|&n| int(n) < top || n <= 0) {
        return Err(Error::malformed("N", "need N >= max(a, b) and N > 0"));
    }
    let points: Vec<FamilyPoint> = ns
        .iter()
        .map(|&n| {
            let f = family_member(operator, domain, a, b, n);
            let var_f = f.total_var();
            let vm = var_m(&f, operator);
            let ratio = if var_f.is_zero() {
                RadicalSum::zero()
            } else {
                vm.scale(&var_f.recip())
            };
            let mut gap = RadicalSum::from(var_f.clone());
            gap.sub_sum(&vm);
            FamilyPoint {
                n,
                var_f,
                var_mf: vm.to_string(),
                ratio: ratio.to_string(),
                ratio_approx: ratio.to_f64(),
                gap: gap.to_string(),
                ratio_exact: ratio,
                gap_exact: gap,
            }
        })
        .collect();
    let best = points
        .iter()
        .max_by(|p, q| p.ratio_exact.cmp_sum(&q.ratio_exact))
        .expect("nonempty");
    let last = points.iter().max_by_key(|p| p.n).expect("nonempty");
    Ok(ConstantEstimate {
        operator,
        domain,
        a: a.clone(),
        b: b.clone(),
        c_lower: best.ratio.clone(),
        c_ab_upper: last.gap.clone(),
        witness_n: last.n,
        witness: family_member(operator, domain, a, b, last.n).to_json_value(),
        points,
    })
}
