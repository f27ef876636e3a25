//! Acceptance criteria 1-8. Each test prints one PASS/FAIL line.

mod common;

use std::time::{Duration, Instant};

use maxvar::functions::{variation_of_values, BVSequence, Instance, Side, StepFunction};
use maxvar::harness::families::{bump_on_plateau, g_n};
use maxvar::harness::reproduce::optimality_grid;
use maxvar::harness::{estimate_constants, generate, search, Domain, InstanceClass, SearchConfig, Verdict};
use maxvar::maximal::continuous::{m_at, m_one_sided, m_restricted_at};
use maxvar::maximal::discrete::{m_discrete_values, var_of_m_discrete};
use maxvar::maximal::envelope::{build_piecewise, var_of_m, ExtremumKind};
use maxvar::maximal::Variant;
use maxvar::numbers::rational::{format_rational, pow2, to_f64};
use maxvar::numbers::{int, rat, QuadraticValue, RadicalSum, Rational};
use maxvar::transference::{extend, grid, sample};
use num_traits::Signed;

const ORACLE_WINDOW: i64 = 10_000;

fn verdict(id: u32, name: &str, pass: bool, detail: String, elapsed: Duration, budget: Duration) {
    let in_time = elapsed <= budget;
    let ok = pass && in_time;
    println!(
        "criterion {id} [{name}]: {} ({detail}; {:.2?} of {:.0?} budget)",
        if ok { "PASS" } else { "FAIL" },
        elapsed,
        budget
    );
    assert!(pass, "criterion {id} failed: {detail}");
    assert!(in_time, "criterion {id} over its time budget");
}

fn continuous(inst: Instance) -> StepFunction {
    match inst {
        Instance::Continuous(f) => f,
        Instance::Discrete(_) => panic!("expected a step function"),
    }
}

fn discrete(inst: Instance) -> BVSequence {
    match inst {
        Instance::Discrete(g) => g,
        Instance::Continuous(_) => panic!("expected a sequence"),
    }
}

fn config(seed: u64, class: InstanceClass, domain: Domain) -> SearchConfig {
    SearchConfig {
        seed,
        class,
        domain,
        k_max: 12,
        value_bound: 16,
        ..SearchConfig::default()
    }
}

#[test]
fn criterion_1_optimality_family() {
    let t = Instant::now();
    let cases = optimality_grid(&[2, 5, 17]);
    let mut bad = Vec::new();
    for (a, b, n) in &cases {
        let g = g_n(a, b, &int(*n));
        let var_g = int(2 * n) - a - b;
        let var_mg = RadicalSum::from(int(2 * n) - a - (a + b) / int(2));
        if g.total_var() != var_g || var_of_m(&g) != var_mg {
            bad.push(format!("a={a} b={b} N={n}"));
        }
    }
    verdict(
        1,
        "optimality family, exact",
        bad.is_empty() && !cases.is_empty(),
        format!("{} cases, mismatches {:?}", cases.len(), bad),
        t.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_2_limitation_example() {
    let t = Instant::now();
    let c = int(1_000_000);
    let p = build_piecewise(&bump_on_plateau(&c));
    let ext = p.local_extrema();
    let q = |x: Rational| QuadraticValue::rational(x);
    let maxima: Vec<_> = ext.iter().filter(|e| e.kind == ExtremumKind::Maximum).collect();
    let minima: Vec<_> = ext.iter().filter(|e| e.kind == ExtremumKind::Minimum).collect();
    let want_max = [(rat(-3, 2), &c + int(1)), (int(0), &c + rat(1, 2)), (rat(3, 2), &c + int(1))];
    let want_min = [(rat(-1, 2), &c + rat(1, 3)), (rat(1, 2), &c + rat(1, 3))];
    let matches = |found: &[&maxvar::maximal::envelope::Extremum], want: &[(Rational, Rational)]| {
        found.len() == want.len()
            && found
                .iter()
                .zip(want)
                .all(|(e, (x, v))| e.contains(&q(x.clone())) && e.value == q(v.clone()))
    };
    let var = p.variation();
    let expected = RadicalSum::from(int(2) * &c + int(4) - rat(1, 3));
    let pass = matches(&maxima, &want_max) && matches(&minima, &want_min) && var == expected;
    verdict(
        2,
        "bump-on-plateau example, exact",
        pass,
        format!("{} maxima, {} minima, Var(Mg) = {var}", maxima.len(), minima.len()),
        t.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_3_alternating_suite() {
    let t = Instant::now();
    let mut detail = Vec::new();
    let mut pass = true;
    for domain in [Domain::Discrete, Domain::Continuous] {
        let c = SearchConfig {
            count: 10_000,
            shrink: false,
            ..config(2024, InstanceClass::Alternating, domain)
        };
        let out = search(&c);
        let undecided = out.reports.iter().filter(|r| r.verdict == Verdict::Undecided).count();
        pass &= out.summary.violations == 0 && undecided == 0 && out.summary.checked == 10_000;
        detail.push(format!(
            "{domain:?}: {} checked, {} violations, {} undecided, {} tight",
            out.summary.checked, out.summary.violations, undecided, out.summary.tight
        ));
    }
    verdict(
        3,
        "strengthened inequality on 10^4 alternating instances per domain",
        pass,
        detail.join("; "),
        t.elapsed(),
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_4_discrete_oracle() {
    let t = Instant::now();
    let mut instances = Vec::new();
    for len in 0..=6u32 {
        for code in 0..4u64.pow(len + 2) {
            let mut x = code;
            let mut digit = || {
                let v = (x % 4) as i64;
                x /= 4;
                int(v)
            };
            let a = digit();
            let b = digit();
            let core: Vec<Rational> = (0..len).map(|_| digit()).collect();
            instances.push(BVSequence::new(a, b, 0, core));
        }
    }
    let exhaustive = instances.len();
    let c = config(4, InstanceClass::GeneralSimple, Domain::Discrete);
    instances.extend((0..1000).map(|i| discrete(generate(&c, i))));
    let mut bad = Vec::new();
    let mut uncertified = 0usize;
    for g in &instances {
        match common::oracle_var(g, ORACLE_WINDOW, Variant::Centered) {
            Some(v) if v == var_of_m_discrete(g) => {}
            Some(_) => bad.push(g.to_json()),
            None => uncertified += 1,
        }
    }
    let checked = instances.len();
    verdict(
        4,
        "discrete oracle equivalence",
        bad.is_empty() && uncertified == 0,
        format!(
            "{exhaustive} exhaustive + {} random, window ±{ORACLE_WINDOW}, {} mismatches, {uncertified} without tail certificate",
            checked - exhaustive,
            bad.len()
        ),
        t.elapsed(),
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_5_transference() {
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut points = 0usize;
    let c = config(5, InstanceClass::GeneralSimple, Domain::Discrete);
    for i in 0..1000 {
        let g = discrete(generate(&c, i));
        let f = extend(&g);
        let span = g.core_len().max(1);
        let (lo, hi) = (g.offset() - 2 * span, g.core_end() - 1 + 2 * span);
        let values = m_discrete_values(&g, lo, hi, Variant::Centered);
        for (n, v) in (lo..=hi).zip(&values) {
            points += 1;
            if &m_at(&f, &int(n)) != v {
                failures.push(format!("extension #{i} at {n}"));
            }
        }
        if f.total_var() != g.total_var() {
            failures.push(format!("extension #{i} variation"));
        }
    }
    let c = config(55, InstanceClass::GeneralSimple, Domain::Continuous);
    for i in 0..100 {
        let f = continuous(generate(&c, i));
        let var_f = f.total_var();
        for n in 1..=4u32 {
            let s = sample(&f, n);
            if s.tilde_g_n.total_var() > var_f || s.g_n.total_var() > var_f {
                failures.push(format!("sample #{i} N={n}: variation bound"));
            }
            let scale = pow2(n as i64);
            let reach = 1i64 << n;
            let (lo, hi) = (s.tilde_g_n.offset() - reach, s.tilde_g_n.core_end() + reach);
            let tilde = m_discrete_values(&s.tilde_g_n, lo, hi, Variant::Centered);
            let signed = m_discrete_values(&s.g_n, lo, hi, Variant::Centered);
            for (k, m) in (lo..=hi).enumerate() {
                points += 1;
                let restricted = m_restricted_at(&f, &(int(m) / &scale), n);
                if tilde[k] != restricted || signed[k] > tilde[k] {
                    failures.push(format!("sample #{i} N={n} at {m}"));
                }
            }
        }
    }
    verdict(
        5,
        "transference identities, exact",
        failures.is_empty(),
        format!("{points} point checks, failures {:?}", &failures[..failures.len().min(5)]),
        t.elapsed(),
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_6_one_sided_limits() {
    let t = Instant::now();
    let c = config(6, InstanceClass::GeneralSimple, Domain::Continuous);
    let mut failures = Vec::new();
    let mut points = 0usize;
    for i in 0..1000 {
        let f = continuous(generate(&c, i));
        for x in f.breakpoints() {
            points += 1;
            let left = m_one_sided(&f, x, Side::Left);
            let right = m_one_sided(&f, x, Side::Right);
            if m_at(&f, x) != left.min(right) {
                failures.push(format!("#{i} at {x}"));
            }
        }
    }
    verdict(
        6,
        "one-sided limit law at breakpoints",
        failures.is_empty(),
        format!("{points} breakpoints, failures {:?}", &failures[..failures.len().min(5)]),
        t.elapsed(),
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_7_constant_estimates() {
    let t = Instant::now();
    let mut problems = Vec::new();
    let ns: Vec<i64> = (1..=64).collect();
    let e = estimate_constants(Variant::Centered, Domain::Continuous, &int(1), &int(0), &ns).unwrap();
    for p in &e.points {
        let floor = 1.0 - 2.0 / p.n as f64;
        let ratio_ok = p.ratio_exact.cmp_rational(&(int(1) - rat(2, p.n))).is_gt();
        if !ratio_ok || p.gap != "1/2" {
            problems.push(format!("N={} ratio={} (> {floor:.4}?) gap={}", p.n, p.ratio, p.gap));
        }
    }
    let tails = [int(0), rat(1, 2), int(1), int(2)];
    let mut spike_cases = 0;
    for a in &tails {
        for b in &tails {
            for domain in [Domain::Discrete, Domain::Continuous] {
                for (variant, want) in [
                    (Variant::OneSided, (b - a).max(int(0))),
                    (Variant::Uncentered, (b - a).abs()),
                ] {
                    spike_cases += 1;
                    let e = estimate_constants(variant, domain, a, b, &[64]).unwrap();
                    if e.c_ab_upper != format_rational(&want) {
                        problems.push(format!("{variant:?} {domain:?} a={a} b={b}: gap {} want {want}", e.c_ab_upper));
                    }
                }
            }
        }
    }
    verdict(
        7,
        "constant estimates along extremal families",
        problems.is_empty(),
        format!(
            "centered N=1..64 ratio up to {}, gap 1/2; {spike_cases} one-sided/uncentered cases at N=64; problems {:?}",
            e.c_lower, problems
        ),
        t.elapsed(),
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_8_grid_convergence() {
    let t = Instant::now();
    let c = config(8, InstanceClass::GeneralSimple, Domain::Continuous);
    let fine = grid(6);
    let mut monotone_bad = Vec::new();
    let mut bound_bad = Vec::new();
    let mut gap_bad = Vec::new();
    let mut worst = 0.0f64;
    let mut tail_share = Vec::new();
    for i in 0..50 {
        let f = continuous(generate(&c, i));
        let values: Vec<Rational> = fine.points.iter().map(|x| m_at(&f, x)).collect();
        let full = var_of_m(&f);
        let mut prev: Option<Rational> = None;
        let mut last = None;
        for n_star in 0..=6u32 {
            // grid(n*) sits inside grid(6) with stride 2^(6 − n*)
            let stride = 1usize << (6 - n_star);
            let first = (fine.points.len() - 1) / 2 - (1usize << (2 * n_star)) * stride;
            let sub: Vec<&Rational> = (0..grid(n_star).points.len()).map(|j| &values[first + j * stride]).collect();
            let v = variation_of_values(sub.iter().copied());
            if prev.as_ref().is_some_and(|p| &v < p) {
                monotone_bad.push(format!("#{i} N*={n_star}"));
            }
            if full.cmp_rational(&v).is_lt() {
                bound_bad.push(format!("#{i} N*={n_star}"));
            }
            prev = Some(v.clone());
            last = Some(v);
        }
        let v6 = last.unwrap();
        let gap = full.to_f64() - to_f64(&v6);
        let threshold = (1.0 + to_f64(&f.total_var())) / 1024.0;
        worst = worst.max(gap / threshold);
        if gap >= threshold {
            let p = build_piecewise(&f);
            let edge = |x: i64, side: Side| (m_at(&f, &int(x)) - p.limit(side).as_rational().expect("rational limit").clone()).abs();
            let outside = to_f64(&(edge(-64, Side::Left) + edge(64, Side::Right)));
            tail_share.push(outside / gap);
            gap_bad.push(format!("#{i} gap {gap:.3e} vs {threshold:.3e}"));
        }
    }
    let share = tail_share.iter().cloned().fold(f64::INFINITY, f64::min);
    verdict(
        8,
        "grid convergence on the 50-instance corpus",
        monotone_bad.is_empty() && bound_bad.is_empty() && gap_bad.is_empty(),
        format!(
            "monotone violations {}, bound violations {}, gap over 2^-10(1+Var f) on {} of 50 (worst ratio {worst:.1}; \
             |Mf(±64) - Mf(±inf)| alone is at least {:.0}% of each such gap)",
            monotone_bad.len(),
            bound_bad.len(),
            gap_bad.len(),
            if share.is_finite() { share * 100.0 } else { 100.0 },
        ),
        t.elapsed(),
        Duration::from_secs(600),
    );
}
