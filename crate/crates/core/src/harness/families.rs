//! Named instances used by the reproduction suite and the constant estimates.

use crate::functions::{BVSequence, StepFunction};
use crate::numbers::{int, Rational};

/// `a·1_(−∞,−1) + n·1_[−1,1) + b·1_[1,∞)`.
pub fn g_n(a: &Rational, b: &Rational, n: &Rational) -> StepFunction {
    StepFunction::new(a.clone(), b.clone(), vec![int(-1), int(1)], vec![n.clone()])
        .expect("two breakpoints")
}

/// `a·1_{n<0} + n·1_{0} + b·1_{n>0}`.
pub fn big_g_n(a: &Rational, b: &Rational, n: &Rational) -> BVSequence {
    BVSequence::new(a.clone(), b.clone(), 0, vec![n.clone()])
}

/// `1_[−2,−1)∪[1,2) + c·1_[−2,2)`.
pub fn bump_on_plateau(c: &Rational) -> StepFunction {
    let one = int(1);
    StepFunction::new(
        int(0),
        int(0),
        vec![int(-2), int(-1), int(1), int(2)],
        vec![c + &one, c.clone(), c + &one],
    )
    .expect("increasing breakpoints")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;

    #[test]
    fn shapes() {
        let g = g_n(&int(1), &int(0), &int(5));
        assert_eq!(g.total_var(), int(9));
        let big = big_g_n(&int(0), &int(1), &int(4));
        assert_eq!(big.value_at(-3), &int(0));
        assert_eq!(big.value_at(0), &int(4));
        assert_eq!(big.value_at(2), &int(1));
        assert_eq!(bump_on_plateau(&rat(1, 2)).total_var(), int(5));
    }
}
