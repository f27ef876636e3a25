use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::check::{check_conjecture, CheckReport, Verdict};
use super::generate::{generate, Domain, InstanceClass};
use super::shrink::shrink;
use crate::functions::Instance;
use crate::numbers::rational::serde_str;
use crate::numbers::{rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub count: u64,
    pub class: InstanceClass,
    pub domain: Domain,
    pub k_min: usize,
    pub k_max: usize,
    /// Numerators of generated values are bounded by this.
    pub value_bound: i64,
    /// Largest integer gap between consecutive breakpoints (piece length in
    /// the discrete domain).
    pub breakpoint_bound: i64,
    pub shrink: bool,
    /// Margins below `near_ratio·Var(f)` are shrunk and reported.
    #[serde(with = "serde_str")]
    pub near_ratio: Rational,
    /// Number of smallest-margin instances kept in the summary.
    pub retain: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            count: 100,
            class: InstanceClass::Alternating,
            domain: Domain::Discrete,
            k_min: 1,
            k_max: 12,
            value_bound: 16,
            breakpoint_bound: 3,
            shrink: true,
            near_ratio: rat(1, 1_000_000),
            retain: 5,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Retained {
    pub index: u64,
    pub margin: String,
    pub margin_approx: f64,
    pub instance: Value,
}

/// A violation or near-violation with its shrunk form, re-checked.
#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub index: u64,
    pub verdict: Verdict,
    pub original: Value,
    pub shrink_steps: usize,
    pub shrunk: CheckReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchSummary {
    pub config: SearchConfig,
    pub checked: u64,
    pub violations: u64,
    pub near_violations: u64,
    pub tight: u64,
    pub smallest_margins: Vec<Retained>,
    pub findings: Vec<Finding>,
}

impl SearchSummary {
    pub fn headline(&self) -> String {
        format!("{} checked, {} violations", self.checked, self.violations)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

pub struct SearchOutcome {
    pub reports: Vec<CheckReport>,
    pub summary: SearchSummary,
}

fn flagged(report: &CheckReport, ratio: &Rational) -> bool {
    report.verdict == Verdict::Violated || report.is_near_violation(ratio)
}

pub fn search(config: &SearchConfig) -> SearchOutcome {
    let reports: Vec<CheckReport> = (0..config.count)
        .into_par_iter()
        .map(|i| check_conjecture(&generate(config, i)))
        .collect();

    let mut order: Vec<usize> = (0..reports.len()).collect();
    order.sort_by(|&i, &j| {
        reports[i]
            .margin_exact
            .cmp_sum(&reports[j].margin_exact)
            .then(i.cmp(&j))
    });
    let smallest_margins = order
        .iter()
        .take(config.retain)
        .map(|&i| Retained {
            index: i as u64,
            margin: reports[i].margin.clone(),
            margin_approx: reports[i].margin_approx,
            instance: reports[i].instance.clone(),
        })
        .collect();

    let flagged_idx: Vec<usize> = (0..reports.len())
        .filter(|&i| flagged(&reports[i], &config.near_ratio))
        .collect();
    let findings = if config.shrink {
        flagged_idx
            .par_iter()
            .map(|&i| {
                let original = generate(config, i as u64);
                let (small, steps) = shrink(&original, |c| flagged(&check_conjecture(c), &config.near_ratio));
                Finding {
                    index: i as u64,
                    verdict: reports[i].verdict,
                    original: original.to_json_value(),
                    shrink_steps: steps,
                    shrunk: check_conjecture(&small),
                }
            })
            .collect()
    } else {
        Vec::new()
    };

    let count = |p: &dyn Fn(&CheckReport) -> bool| reports.iter().filter(|r| p(r)).count() as u64;
    let summary = SearchSummary {
        config: config.clone(),
        checked: reports.len() as u64,
        violations: count(&|r| r.verdict == Verdict::Violated),
        near_violations: count(&|r| r.verdict == Verdict::Holds && r.is_near_violation(&config.near_ratio)),
        tight: count(&|r| r.tight),
        smallest_margins,
        findings,
    };
    SearchOutcome { reports, summary }
}

/// One report per line.
pub fn write_jsonl(path: &Path, reports: &[CheckReport]) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for r in reports {
        writeln!(w, "{}", r.to_json())?;
    }
    w.flush()
}

pub fn read_jsonl(path: &Path) -> std::io::Result<Vec<Value>> {
    BufReader::new(File::open(path)?)
        .lines()
        .filter(|l| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
        .map(|l| {
            l.and_then(|l| serde_json::from_str(&l).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e)))
        })
        .collect()
}

/// The instance stored in a persisted report line.
pub fn instance_of(line: &Value) -> crate::Result<Instance> {
    Instance::from_json_value(&line["instance"])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_search() {
        let out = search(&SearchConfig {
            count: 0,
            ..SearchConfig::default()
        });
        assert_eq!(out.summary.checked, 0);
        assert!(out.summary.smallest_margins.is_empty());
        assert_eq!(out.summary.headline(), "0 checked, 0 violations");
    }

    #[test]
    fn deterministic_summary() {
        let c = SearchConfig {
            seed: 42,
            count: 40,
            domain: Domain::Continuous,
            class: InstanceClass::GeneralSimple,
            k_max: 5,
            ..SearchConfig::default()
        };
        assert_eq!(search(&c).summary.to_json(), search(&c).summary.to_json());
    }

    #[test]
    fn near_violations_are_shrunk() {
        // every instance is flagged at this ratio
        let c = SearchConfig {
            seed: 3,
            count: 4,
            k_max: 4,
            near_ratio: rat(10, 1),
            ..SearchConfig::default()
        };
        let out = search(&c);
        assert_eq!(out.summary.findings.len() as u64, out.summary.near_violations);
        for f in &out.summary.findings {
            assert!(f.shrunk.is_near_violation(&c.near_ratio));
        }
    }

    #[test]
    fn jsonl_round_trip() {
        let out = search(&SearchConfig {
            count: 3,
            ..SearchConfig::default()
        });
        let dir = std::env::temp_dir().join(format!("maxvar-jsonl-{}", std::process::id()));
        write_jsonl(&dir, &out.reports).unwrap();
        let lines = read_jsonl(&dir).unwrap();
        std::fs::remove_file(&dir).unwrap();
        assert_eq!(lines.len(), 3);
        for (line, r) in lines.iter().zip(&out.reports) {
            assert_eq!(line["margin"], Value::String(r.margin.clone()));
            let inst = instance_of(line).unwrap();
            assert_eq!(inst.to_json_value(), r.instance);
        }
    }
}
