//! Seeded instance generator. Instance `i` of a search depends only on the
//! seed and `i`: ChaCha8 seeded from the seed, stream `i`.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::search::SearchConfig;
use crate::functions::{BVSequence, Instance, StepFunction};
use crate::numbers::{int, rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceClass {
    /// Nonzero pieces separated by zero pieces.
    Alternating,
    GeneralSimple,
    /// Two bumps on a tall plateau.
    BumpOnPlateau,
}

impl FromStr for InstanceClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "alternating" => Ok(InstanceClass::Alternating),
            "general-simple" | "general" => Ok(InstanceClass::GeneralSimple),
            "bump-on-plateau" => Ok(InstanceClass::BumpOnPlateau),
            _ => Err(format!("unknown class `{s}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Continuous,
    Discrete,
}

impl FromStr for Domain {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "continuous" | "real" => Ok(Domain::Continuous),
            "discrete" | "integer" => Ok(Domain::Discrete),
            _ => Err(format!("unknown domain `{s}`")),
        }
    }
}

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `p/q` with `|p| ≤ bound` and `q ∈ {1, 2, 3, 4}`.
fn value(rng: &mut ChaCha8Rng, bound: i64, signed: bool) -> Rational {
    let p = if signed {
        rng.gen_range(-bound..=bound)
    } else {
        rng.gen_range(0..=bound)
    };
    rat(p, rng.gen_range(1..=4))
}

fn piece_values(rng: &mut ChaCha8Rng, k: usize, class: InstanceClass, bound: i64) -> Vec<Rational> {
    let signed = class == InstanceClass::GeneralSimple;
    let parity = rng.gen_range(0..2);
    (0..k)
        .map(|i| {
            if class == InstanceClass::Alternating && i % 2 == parity {
                int(0)
            } else {
                value(rng, bound, signed)
            }
        })
        .collect()
}

pub fn generate(config: &SearchConfig, index: u64) -> Instance {
    let mut rng = rng_for(config.seed, index);
    let bound = config.value_bound.max(1);
    let gap = config.breakpoint_bound.max(1);
    if config.class == InstanceClass::BumpOnPlateau {
        return bump(&mut rng, config.domain, bound, gap);
    }
    let k = rng.gen_range(config.k_min.max(1)..=config.k_max.max(config.k_min).max(1));
    let signed = config.class == InstanceClass::GeneralSimple;
    let a = value(&mut rng, bound, signed);
    let b = value(&mut rng, bound, signed);
    let values = piece_values(&mut rng, k, config.class, bound);
    let start = -rng.gen_range(0..=gap * k as i64 / 2);
    match config.domain {
        Domain::Continuous => {
            let mut pos = start;
            let mut breakpoints = Vec::with_capacity(k + 1);
            for i in 0..=k {
                if i > 0 {
                    pos += rng.gen_range(1..=gap);
                }
                breakpoints.push(int(pos) + rat(rng.gen_range(-1..=1), 4));
            }
            Instance::Continuous(StepFunction::new(a, b, breakpoints, values).expect("increasing breakpoints"))
        }
        Domain::Discrete => {
            let mut core = Vec::new();
            for v in values {
                let len = rng.gen_range(1..=gap);
                core.extend(std::iter::repeat(v).take(len as usize));
            }
            Instance::Discrete(BVSequence::new(a, b, start, core))
        }
    }
}

fn bump(rng: &mut ChaCha8Rng, domain: Domain, bound: i64, gap: i64) -> Instance {
    let scale = Rational::from_integer(num_bigint::BigInt::from(10).pow(rng.gen_range(0..=6u32)));
    let c = (value(rng, bound, false) + int(1)) * scale;
    let h1 = &c + value(rng, bound, false);
    let h2 = &c + value(rng, bound, false);
    match domain {
        Domain::Continuous => {
            let w = rng.gen_range(2..=gap + 1);
            let j1 = rng.gen_range(1..=4 * w - 1);
            let j2 = rng.gen_range(1..=4 * w - 1);
            let breakpoints = vec![int(-w), int(-w) + rat(j1, 4), int(w) - rat(j2, 4), int(w)];
            Instance::Continuous(
                StepFunction::new(int(0), int(0), breakpoints, vec![h1, c, h2]).expect("increasing breakpoints"),
            )
        }
        Domain::Discrete => {
            let (l1, m, l2) = (rng.gen_range(1..=gap), rng.gen_range(1..=2 * gap), rng.gen_range(1..=gap));
            let mut core = Vec::new();
            core.extend(std::iter::repeat(h1).take(l1 as usize));
            core.extend(std::iter::repeat(c).take(m as usize));
            core.extend(std::iter::repeat(h2).take(l2 as usize));
            Instance::Discrete(BVSequence::new(int(0), int(0), -(l1 + m / 2), core))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn config(class: InstanceClass, domain: Domain) -> SearchConfig {
        SearchConfig {
            class,
            domain,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn deterministic() {
        let c = config(InstanceClass::GeneralSimple, Domain::Continuous);
        assert_eq!(generate(&c, 7), generate(&c, 7));
        assert_ne!(generate(&c, 7), generate(&c, 8));
    }

    #[test]
    fn alternating_class() {
        for domain in [Domain::Continuous, Domain::Discrete] {
            let c = config(InstanceClass::Alternating, domain);
            for i in 0..200 {
                let inst = generate(&c, i);
                assert!(inst.is_alternating(), "{}", inst.to_json());
            }
        }
    }

    #[test]
    fn value_shape() {
        let c = config(InstanceClass::GeneralSimple, Domain::Continuous);
        for i in 0..100 {
            if let Instance::Continuous(f) = generate(&c, i) {
                assert!(f.values().len() <= c.k_max);
                for v in f.values() {
                    assert!(v.abs() <= int(c.value_bound));
                    assert!(*v.denom() <= 4.into());
                }
            } else {
                panic!("wrong domain");
            }
        }
    }

    #[test]
    fn bumps() {
        for domain in [Domain::Continuous, Domain::Discrete] {
            let c = config(InstanceClass::BumpOnPlateau, domain);
            for i in 0..20 {
                let inst = generate(&c, i);
                assert_eq!(inst.tails(), (&int(0), &int(0)));
            }
        }
    }
}
