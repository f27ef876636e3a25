use std::fmt;

use num_traits::Signed;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::functions::Instance;
use crate::maximal::discrete::var_of_m_discrete;
use crate::maximal::envelope::var_of_m;
use crate::numbers::quadratic::RadicalSum;
use crate::numbers::rational::{format_rational, Sign};
use crate::numbers::{rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    #[serde(rename = "undecided-enclosure")]
    Undecided,
}

/// `Exact` when the left side is rational; `Certified` when radicals were
/// compared through refined enclosures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Exact,
    Certified,
}

/// `Var(Mf)` against `Var(f) − ½||a| − |b||`.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub instance: Value,
    pub var_f: String,
    pub lhs: String,
    pub lhs_approx: f64,
    pub rhs: String,
    pub margin: String,
    pub margin_approx: f64,
    pub verdict: Verdict,
    pub mode: CheckMode,
    /// Exact zero margin.
    pub tight: bool,
    #[serde(skip)]
    pub margin_exact: RadicalSum,
    #[serde(skip)]
    pub var_f_exact: Rational,
}

impl CheckReport {
    /// Margin below `ratio·Var(f)` without being exactly zero.
    pub fn is_near_violation(&self, ratio: &Rational) -> bool {
        !self.tight && self.margin_exact.cmp_rational(&(ratio * &self.var_f_exact)).is_lt()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match (self.verdict, self.tight) {
            (Verdict::Holds, true) => "HOLDS(tight)",
            (Verdict::Holds, false) => "HOLDS",
            (Verdict::Violated, _) => "VIOLATED",
            (Verdict::Undecided, _) => "UNDECIDED",
        };
        write!(f, "lhs={} rhs={} margin={} {}", self.lhs, self.rhs, self.margin, verdict)
    }
}

fn lhs_of(instance: &Instance) -> RadicalSum {
    match instance {
        Instance::Continuous(f) => var_of_m(f),
        Instance::Discrete(g) => RadicalSum::from(var_of_m_discrete(g)),
    }
}

/// Inequality check for any simple instance.
pub fn check_conjecture(instance: &Instance) -> CheckReport {
    let lhs = lhs_of(instance);
    let var_f = instance.total_var();
    let (a, b) = instance.tails();
    let rhs = &var_f - rat(1, 2) * (a.abs() - b.abs()).abs();
    let mut margin = RadicalSum::from(rhs.clone());
    margin.sub_sum(&lhs);
    let sign = margin.sign();
    CheckReport {
        instance: instance.to_json_value(),
        var_f: format_rational(&var_f),
        lhs: lhs.to_string(),
        lhs_approx: lhs.to_f64(),
        rhs: format_rational(&rhs),
        margin: margin.to_string(),
        margin_approx: margin.to_f64(),
        verdict: if sign == Sign::Negative {
            Verdict::Violated
        } else {
            Verdict::Holds
        },
        mode: if lhs.is_rational() {
            CheckMode::Exact
        } else {
            CheckMode::Certified
        },
        tight: sign == Sign::Zero,
        margin_exact: margin,
        var_f_exact: var_f,
    }
}

/// As [`check_conjecture`], restricted to instances whose nonzero pieces are
/// separated by zero pieces.
pub fn check_theorem1(instance: &Instance) -> Result<CheckReport> {
    if !instance.is_alternating() {
        return Err(Error::ClassViolation(
            "adjacent nonzero pieces; use check_conjecture for general simple instances".into(),
        ));
    }
    Ok(check_conjecture(instance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{BVSequence, StepFunction};
    use crate::harness::families::{bump_on_plateau, g_n};
    use crate::numbers::int;

    #[test]
    fn g5_is_tight() {
        let r = check_theorem1(&Instance::Continuous(g_n(&int(1), &int(0), &int(5)))).unwrap();
        assert_eq!((r.lhs.as_str(), r.rhs.as_str(), r.margin.as_str()), ("17/2", "17/2", "0"));
        assert!(r.tight);
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.to_string(), "lhs=17/2 rhs=17/2 margin=0 HOLDS(tight)");
        assert!(!r.is_near_violation(&rat(1, 1_000_000)));
    }

    #[test]
    fn constant_holds() {
        let r = check_theorem1(&Instance::Continuous(StepFunction::constant(int(4)))).unwrap();
        assert_eq!((r.lhs.as_str(), r.rhs.as_str()), ("0", "0"));
        assert_eq!(r.mode, CheckMode::Exact);
    }

    #[test]
    fn discrete_single_point() {
        let g = BVSequence::new(int(1), int(0), 0, vec![int(5)]);
        let r = check_theorem1(&Instance::Discrete(g)).unwrap();
        assert_eq!(r.rhs, "17/2");
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn c_example_margin() {
        let c = int(1_000_000);
        let inst = Instance::Continuous(bump_on_plateau(&c));
        assert!(matches!(check_theorem1(&inst), Err(Error::ClassViolation(_))));
        let r = check_conjecture(&inst);
        assert_eq!(r.lhs, format_rational(&(int(2) * &c + int(4) - rat(1, 3))));
        assert_eq!(r.rhs, "2000004");
        assert_eq!(r.margin, "1/3");
    }

    #[test]
    fn certified_mode() {
        let f = StepFunction::new(
            int(0),
            int(0),
            vec![int(0), int(1), int(3), int(5)],
            vec![int(2), int(1), int(3)],
        )
        .unwrap();
        let r = check_conjecture(&Instance::Continuous(f));
        assert_eq!(r.mode, CheckMode::Certified);
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.margin.contains("sqrt"));
    }
}
