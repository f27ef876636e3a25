mod common;

use maxvar::functions::Side;
use maxvar::maximal::continuous::{candidate_curves, m_at, m_one_sided};
use maxvar::maximal::envelope::var_of_m;
use maxvar::maximal::peaks::representatives;
use maxvar::numbers::{int, rat, RadicalSum, Rational};
use maxvar::transference::{grid, sampled_variation};
use num_traits::Signed;
use proptest::prelude::*;

use common::{alternating_step_function, rational_point, step_function};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pointwise_floors(f in step_function(8, 8, true), x in rational_point()) {
        let v = m_at(&f, &x);
        let abs = f.abs();
        prop_assert!(v >= (abs.a() + abs.b()) / int(2));
        let local = (abs.one_sided_value(&x, Side::Left) + abs.one_sided_value(&x, Side::Right)) / int(2);
        prop_assert!(v >= local);
    }

    #[test]
    fn one_sided_limit_law(f in step_function(8, 8, true), xs in prop::collection::vec(rational_point(), 64)) {
        for x in f.breakpoints().iter().chain(&xs) {
            let left = m_one_sided(&f, x, Side::Left);
            let right = m_one_sided(&f, x, Side::Right);
            prop_assert_eq!(m_at(&f, x), left.min(right), "at {}", x);
        }
    }

    #[test]
    fn envelope_is_max_of_candidates(f in step_function(6, 8, true), x in rational_point()) {
        let curves = candidate_curves(&f);
        let best = curves.iter().filter_map(|c| c.eval(&x)).max();
        let floor = (f.abs().a() + f.abs().b()) / int(2);
        let local = {
            let abs = f.abs();
            (abs.one_sided_value(&x, Side::Left) + abs.one_sided_value(&x, Side::Right)) / int(2)
        };
        let expected = best.into_iter().chain([floor, local]).max().unwrap();
        prop_assert_eq!(m_at(&f, &x), expected);
    }

    #[test]
    fn sampled_variation_below_exact(f in step_function(6, 8, true), n_star in 0u32..3) {
        let full = var_of_m(&f);
        let coarse = sampled_variation(&f, &grid(n_star));
        let fine = sampled_variation(&f, &grid(n_star + 1));
        prop_assert!(coarse <= fine);
        prop_assert!(full.cmp_rational(&fine).is_ge());
    }

    #[test]
    fn representative_count(f in alternating_step_function(8, 8)) {
        let k = f.abs().normalize().values().len();
        let reps = representatives(&f).unwrap();
        prop_assert!(reps.len() <= k * k);
    }

    #[test]
    fn strengthened_inequality_on_alternating(f in alternating_step_function(10, 16)) {
        let lhs = var_of_m(&f);
        let rhs = f.total_var() - rat(1, 2) * (f.a().abs() - f.b().abs()).abs();
        prop_assert!(lhs.cmp_rational(&rhs).is_le(), "{} > {}", lhs, rhs);
    }

    #[test]
    fn scaling(f in step_function(6, 8, true), p in -6i64..6, q in 1i64..5, x in rational_point()) {
        let c = rat(p, q);
        let scaled = f.scale(&c);
        prop_assert_eq!(m_at(&scaled, &x), c.abs() * m_at(&f, &x));
        prop_assert_eq!(var_of_m(&scaled), var_of_m(&f).scale(&c.abs()));
    }

    #[test]
    fn reflection(f in step_function(8, 8, true), x in rational_point()) {
        let r = f.reflect();
        prop_assert_eq!(var_of_m(&r), var_of_m(&f));
        prop_assert_eq!(m_at(&r, &-x.clone()), m_at(&f, &x));
    }
}

#[test]
fn irrational_totals_compare_exactly() {
    // the dip between the two peaks bottoms out at an irrational height
    let f = maxvar::functions::StepFunction::new(
        int(0),
        int(0),
        vec![int(0), int(1), int(3), int(4)],
        vec![int(2), int(1), int(3)],
    )
    .unwrap();
    let v = var_of_m(&f);
    let (lo, hi) = v.enclosure(64);
    let approx: Rational = (&lo + &hi) / int(2);
    assert!(v.cmp_rational(&(&approx + rat(1, 1000))).is_lt());
    assert!(v.cmp_rational(&(&approx - rat(1, 1000))).is_gt());
    assert_eq!(v.cmp_sum(&RadicalSum::from(approx.clone())), v.cmp_rational(&approx));
    assert!(!v.is_rational());
    assert_eq!(v.to_string(), "49/6-1/2*sqrt(2)");
}
