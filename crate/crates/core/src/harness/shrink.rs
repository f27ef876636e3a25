//! Greedy reduction preserving a predicate: piece removal, breakpoint
//! merging and value rounding, restarted after every accepted step. Each
//! accepted step lowers `(pieces, non-integer values, nonzero values,
//! non-integer breakpoints)` lexicographically, so the loop terminates.

use num_traits::Zero;

use crate::functions::{BVSequence, Instance, StepFunction};
use crate::numbers::rational::floor;
use crate::numbers::Rational;

fn round_candidates(v: &Rational) -> Vec<Rational> {
    if !v.is_integer() {
        vec![Rational::from_integer(floor(v))]
    } else if !v.is_zero() {
        vec![Rational::zero()]
    } else {
        vec![]
    }
}

fn step_reductions(f: &StepFunction) -> Vec<StepFunction> {
    let (a, b, t, v) = (f.a(), f.b(), f.breakpoints(), f.values());
    let mut out = Vec::new();
    let mut push = |a: &Rational, b: &Rational, t: Vec<Rational>, v: Vec<Rational>| {
        if let Ok(g) = StepFunction::new(a.clone(), b.clone(), t, v) {
            out.push(g.normalize());
        }
    };
    // drop breakpoint j together with the piece on one side
    if !v.is_empty() {
        for j in 0..t.len() {
            let mut tt = t.to_vec();
            tt.remove(j);
            if j > 0 {
                let mut vv = v.to_vec();
                vv.remove(j - 1);
                push(a, b, tt.clone(), vv);
            }
            if j < v.len() {
                let mut vv = v.to_vec();
                vv.remove(j);
                push(a, b, tt, vv);
            }
        }
    }
    for i in 0..v.len() {
        for r in round_candidates(&v[i]) {
            let mut vv = v.to_vec();
            vv[i] = r;
            push(a, b, t.to_vec(), vv);
        }
    }
    for r in round_candidates(a) {
        push(&r, b, t.to_vec(), v.to_vec());
    }
    for r in round_candidates(b) {
        push(a, &r, t.to_vec(), v.to_vec());
    }
    for j in 0..t.len() {
        if !t[j].is_integer() {
            let mut tt = t.to_vec();
            tt[j] = t[j].round();
            push(a, b, tt, v.to_vec());
        }
    }
    out
}

fn sequence_reductions(g: &BVSequence) -> Vec<BVSequence> {
    let (a, b, s, c) = (g.a(), g.b(), g.offset(), g.core());
    let mut out = Vec::new();
    for i in 0..c.len() {
        let mut cc = c.to_vec();
        cc.remove(i);
        out.push(BVSequence::new(a.clone(), b.clone(), s, cc).normalize());
    }
    for i in 0..c.len() {
        for r in round_candidates(&c[i]) {
            let mut cc = c.to_vec();
            cc[i] = r;
            out.push(BVSequence::new(a.clone(), b.clone(), s, cc).normalize());
        }
    }
    for r in round_candidates(a) {
        out.push(BVSequence::new(r, b.clone(), s, c.to_vec()).normalize());
    }
    for r in round_candidates(b) {
        out.push(BVSequence::new(a.clone(), r, s, c.to_vec()).normalize());
    }
    out
}

fn reductions(instance: &Instance) -> Vec<Instance> {
    match instance {
        Instance::Continuous(f) => step_reductions(f).into_iter().map(Instance::Continuous).collect(),
        Instance::Discrete(g) => sequence_reductions(g).into_iter().map(Instance::Discrete).collect(),
    }
}

/// Smallest instance reachable by accepted reductions, and the number of
/// accepted steps. `keep` must hold for `instance`.
pub fn shrink<P>(instance: &Instance, keep: P) -> (Instance, usize)
where
    P: Fn(&Instance) -> bool,
{
    let mut current = instance.clone();
    let mut steps = 0;
    'outer: loop {
        for candidate in reductions(&current) {
            if candidate != current && keep(&candidate) {
                current = candidate;
                steps += 1;
                continue 'outer;
            }
        }
        return (current, steps);
    }
}
