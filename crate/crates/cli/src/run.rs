use std::fs;

use maxvar::functions::Instance;
use maxvar::harness::{self, check_conjecture, check_theorem1, reproduce_examples, search, SearchConfig, Verdict};
use maxvar::maximal::continuous::m_variant_at;
use maxvar::maximal::discrete::{m_discrete_at, var_of_m_discrete_variant};
use maxvar::maximal::envelope::var_of_m_variant;
use maxvar::maximal::Variant;
use maxvar::numbers::rational::{ceil, floor, format_rational, pow2, to_decimal};
use maxvar::numbers::{int, parse_rational, RadicalSum, Rational};
use maxvar::transference::transfer_audit;
use serde_json::json;

use crate::{Command, Format, Operator, Source};

const VIOLATION: u8 = 2;
const MAX_CURVE_POINTS: i64 = 1 << 20;

impl From<Operator> for Variant {
    fn from(o: Operator) -> Variant {
        match o {
            Operator::Centered => Variant::Centered,
            Operator::OneSided => Variant::OneSided,
            Operator::Uncentered => Variant::Uncentered,
        }
    }
}

fn load(source: &Source) -> Result<Instance, String> {
    let text = match (&source.file, &source.inline) {
        (Some(path), _) => fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?,
        (None, Some(s)) => s.clone(),
        (None, None) => return Err("give --file or --inline".into()),
    };
    Instance::from_json(&text).map_err(|e| e.to_string())
}

fn rational_arg(name: &str, s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|_| format!("--{name}: `{s}` is not a rational number"))
}

fn integer_arg(name: &str, x: &Rational) -> Result<i64, String> {
    if !x.is_integer() {
        return Err(format!("--{name}: sequences are evaluated at integers"));
    }
    x.to_integer().try_into().map_err(|_| format!("--{name}: out of range"))
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

pub fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Eval { source, x, variant, format } => {
            let inst = load(&source)?;
            let xr = rational_arg("x", &x)?;
            let variant = Variant::from(variant);
            let value = match &inst {
                Instance::Continuous(f) => m_variant_at(f, &xr, variant),
                Instance::Discrete(g) => m_discrete_at(g, integer_arg("x", &xr)?, variant),
            };
            match format {
                Format::Json => print_json(&json!({
                    "x": format_rational(&xr),
                    "variant": variant.name(),
                    "value": format_rational(&value),
                })),
                _ => println!("{}", format_rational(&value)),
            }
            Ok(0)
        }
        Command::Var { source, format } => {
            let v = load(&source)?.total_var();
            match format {
                Format::Json => print_json(&json!({ "var": format_rational(&v) })),
                _ => println!("{}", format_rational(&v)),
            }
            Ok(0)
        }
        Command::Maxvar { source, variant, format } => {
            let variant = Variant::from(variant);
            let v = match load(&source)? {
                Instance::Continuous(f) => var_of_m_variant(&f, variant),
                Instance::Discrete(g) => RadicalSum::from(var_of_m_discrete_variant(&g, variant)),
            };
            let mode = if v.is_rational() { "exact" } else { "certified" };
            match format {
                Format::Json => print_json(&json!({
                    "variant": variant.name(),
                    "var_mf": v.to_string(),
                    "approx": v.to_decimal(20),
                    "mode": mode,
                })),
                _ => println!("{} mode={mode}", v),
            }
            Ok(0)
        }
        Command::Check { source, theorem1, format } => {
            let inst = load(&source)?;
            let report = if theorem1 {
                check_theorem1(&inst).map_err(|e| format!("{e} (run without --theorem1)"))?
            } else {
                check_conjecture(&inst)
            };
            match format {
                Format::Json => println!("{}", report.to_json()),
                _ => println!("{report}"),
            }
            if report.verdict == Verdict::Violated {
                eprintln!("violating instance: {}", inst.to_json());
                return Ok(VIOLATION);
            }
            Ok(0)
        }
        Command::Search {
            seed,
            count,
            class,
            domain,
            k_min,
            k_max,
            value_bound,
            breakpoint_bound,
            no_shrink,
            out,
            format,
        } => {
            let config = SearchConfig {
                seed,
                count,
                class: class.parse()?,
                domain: domain.parse()?,
                k_min,
                k_max,
                value_bound,
                breakpoint_bound,
                shrink: !no_shrink,
                ..SearchConfig::default()
            };
            if k_min > k_max || value_bound < 1 || breakpoint_bound < 1 {
                return Err("need k-min <= k-max and positive bounds".into());
            }
            let outcome = search(&config);
            if let Some(path) = out {
                harness::write_jsonl(&path, &outcome.reports).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            match format {
                Format::Json => println!("{}", outcome.summary.to_json()),
                _ => {
                    println!("{}", outcome.summary.headline());
                    for f in &outcome.summary.findings {
                        println!("finding #{} ({:?}, {} shrink steps): {}", f.index, f.verdict, f.shrink_steps, f.shrunk);
                        println!("  {}", f.shrunk.instance);
                    }
                }
            }
            Ok(if outcome.summary.violations > 0 { VIOLATION } else { 0 })
        }
        Command::Transfer { source, n_star, n, format } => {
            let f = match load(&source)? {
                Instance::Continuous(f) => f,
                Instance::Discrete(_) => return Err("transfer takes a step function".into()),
            };
            let report = transfer_audit(&f, n_star, n).map_err(|e| e.to_string())?;
            match format {
                Format::Text => {
                    let v = serde_json::to_value(&report).expect("json");
                    for (k, x) in v.as_object().expect("object") {
                        println!("{k}={}", x.as_str().map_or(x.to_string(), str::to_string));
                    }
                }
                _ => print_json(&serde_json::to_value(&report).expect("json")),
            }
            Ok(if report.holds { 0 } else { VIOLATION })
        }
        Command::Reproduce { format } => {
            let report = reproduce_examples();
            match format {
                Format::Json => print_json(&serde_json::to_value(&report).expect("json")),
                _ => println!("{report}"),
            }
            if report.holds {
                Ok(0)
            } else {
                Err(format!("{} mismatches", report.failures().count()))
            }
        }
        Command::SampleCurve {
            source,
            resolution,
            lo,
            hi,
            variant,
        } => sample_curve(&load(&source)?, resolution, lo, hi, variant.into()),
    }
}

fn sample_curve(inst: &Instance, resolution: u32, lo: Option<String>, hi: Option<String>, variant: Variant) -> Result<u8, String> {
    let (default_lo, default_hi, step) = match inst {
        Instance::Continuous(f) => {
            let t = f.breakpoints();
            (&t[0] - int(1), &t[t.len() - 1] + int(1), pow2(-(resolution as i64)))
        }
        Instance::Discrete(g) => (int(g.offset() - 2), int(g.core_end() + 1), int(1)),
    };
    let lo = lo.map_or(Ok(default_lo), |s| rational_arg("lo", &s))?;
    let hi = hi.map_or(Ok(default_hi), |s| rational_arg("hi", &s))?;
    if lo > hi {
        return Err("--lo exceeds --hi".into());
    }
    let k_lo = ceil(&(&lo / &step));
    let k_hi = floor(&(&hi / &step));
    let k_lo: i64 = k_lo.try_into().map_err(|_| "grid out of range".to_string())?;
    let k_hi: i64 = k_hi.try_into().map_err(|_| "grid out of range".to_string())?;
    if k_hi - k_lo >= MAX_CURVE_POINTS {
        return Err(format!("more than {MAX_CURVE_POINTS} grid points; raise --lo or lower --hi"));
    }
    println!("x,Mf_exact,Mf_approx");
    for k in k_lo..=k_hi {
        let x = int(k) * &step;
        let v = match inst {
            Instance::Continuous(f) => m_variant_at(f, &x, variant),
            Instance::Discrete(g) => m_discrete_at(g, k, variant),
        };
        println!("{},{},{}", format_rational(&x), format_rational(&v), to_decimal(&v, 20));
    }
    Ok(0)
}
