//! Passing between sequences on ℤ and step functions on ℝ: extension,
//! dyadic sampling, grids, truncation and the audited inequality chain.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functions::{variation_of_values, Antiderivative, BVSequence, StepFunction};
use crate::maximal::continuous::{m_at, m_restricted_at};
use crate::maximal::discrete::{m_discrete_values, var_of_m_discrete};
use crate::maximal::envelope::var_of_m;
use crate::maximal::Variant;
use crate::numbers::rational::{self, format_rational, serde_vec};
use crate::numbers::{int, rat, Rational};

/// `G(n)` on `[n − 1/2, n + 1/2)`.
pub fn extend(g: &BVSequence) -> StepFunction {
    let half = rat(1, 2);
    if g.core().is_empty() {
        return StepFunction::two_tails(g.a().clone(), g.b().clone(), int(g.offset()) - half);
    }
    let breakpoints = (g.offset()..=g.core_end()).map(|n| int(n) - &half).collect();
    StepFunction::new(g.a().clone(), g.b().clone(), breakpoints, g.core().to_vec())
        .expect("increasing breakpoints")
}

/// Dyadic cell averages of `g` and of `|g|` at resolution `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SamplePair {
    pub resolution: u32,
    pub g_n: BVSequence,
    pub tilde_g_n: BVSequence,
}

pub fn sample(g: &StepFunction, n: u32) -> SamplePair {
    let h = rational::pow2(n as i64);
    let t = g.breakpoints();
    let half = rat(1, 2);
    // cells [(k − 1/2)/h, (k + 1/2)/h) meeting [t_0, t_K)
    let lo = rational::floor(&(&t[0] * &h - &half)) + 1u32;
    let hi = rational::ceil(&(&t[t.len() - 1] * &h + &half)) - 1u32;
    let lo: i64 = lo.try_into().expect("cell index fits in i64");
    let hi: i64 = hi.try_into().expect("cell index fits in i64");
    let abs = g.abs();
    let big = Antiderivative::new(g);
    let big_abs = Antiderivative::new(&abs);
    let cell = |k: i64| ((int(k) - &half) / &h, (int(k) + &half) / &h);
    let mut core = Vec::new();
    let mut core_abs = Vec::new();
    for k in lo..=hi {
        let (l, r) = cell(k);
        core.push(big.integral(&l, &r) * &h);
        core_abs.push(big_abs.integral(&l, &r) * &h);
    }
    SamplePair {
        resolution: n,
        g_n: BVSequence::new(g.a().clone(), g.b().clone(), lo, core).normalize(),
        tilde_g_n: BVSequence::new(abs.a().clone(), abs.b().clone(), lo, core_abs).normalize(),
    }
}

/// `2^(−N*)ℤ ∩ [−2^N*, 2^N*]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SamplingGrid {
    pub resolution: u32,
    #[serde(with = "serde_vec")]
    pub points: Vec<Rational>,
}

impl SamplingGrid {
    /// Integer numerators `k` of the points `k/2^N*`.
    pub fn numerators(&self) -> impl Iterator<Item = i64> {
        let m = 1i64 << (2 * self.resolution);
        -m..=m
    }
}

pub fn grid(n_star: u32) -> SamplingGrid {
    assert!(n_star <= 15, "grid resolution too large");
    let h = 1i64 << n_star;
    let points = (-(h * h)..=h * h).map(|k| rat(k, h)).collect();
    SamplingGrid {
        resolution: n_star,
        points,
    }
}

/// `a` below `−n`, `G` on `[−n, n]`, `b` above `n`.
pub fn truncate(g: &BVSequence, n: i64) -> BVSequence {
    let core = (-n..=n).map(|k| g.value_at(k).clone()).collect();
    BVSequence::new(g.a().clone(), g.b().clone(), -n, core).normalize()
}

/// Sampled variation `Var_E(Mg)` over a grid.
pub fn sampled_variation(g: &StepFunction, grid: &SamplingGrid) -> Rational {
    let values: Vec<Rational> = grid.points.par_iter().map(|x| m_at(g, x)).collect();
    variation_of_values(values.iter())
}

/// Every member of the chain comparing the continuous maximal function with
/// its sampled discrete counterparts at resolutions `(N*, N)`. Only the
/// exact relations are checked; the remaining differences are reported.
#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub n_star: u32,
    pub n: u32,
    /// `Var_E(Mg)` on the grid.
    pub var_grid_m: String,
    /// `Var_E(M_N g)` with restricted radii.
    pub var_grid_m_restricted: String,
    /// `Var(M G̃_N)` on the scaled grid.
    pub var_grid_m_tilde: String,
    /// `Var(M G_N)` on the scaled grid.
    pub var_grid_m_signed: String,
    /// `Var(M G_N)` over ℤ.
    pub var_m_signed: String,
    pub var_tilde: String,
    pub var_signed: String,
    pub var_g: String,
    /// `Var(Mg)` over ℝ (exact, possibly with radicals) and its decimal.
    pub var_m: String,
    pub var_m_approx: f64,
    /// `Var(Mg) − Var_E(Mg)`, decimal.
    pub sampling_gap: f64,
    /// `Var_E(Mg) − Var_E(M_N g)`.
    pub restriction_gap: String,
    /// `Var(M G̃_N) − Var(M G_N)` on the scaled grid.
    pub sign_gap: String,
    /// `M G_N ≤ M G̃_N = M_N g(·/2^N)` at every scaled grid point.
    pub pointwise_identity: bool,
    /// `Var_E(M_N g) = Var(M G̃_N)` on the scaled grid.
    pub restricted_equals_tilde: bool,
    /// `Var(M G_N)` on the scaled grid is at most its value over ℤ.
    pub grid_below_full: bool,
    /// `max{Var(G̃_N), Var(G_N)} ≤ Var(g)`.
    pub sample_variation_bound: bool,
    pub holds: bool,
}

pub fn transfer_audit(g: &StepFunction, n_star: u32, n: u32) -> Result<TransferReport> {
    if n < n_star {
        return Err(Error::malformed("N", "need N >= N*"));
    }
    let e = grid(n_star);
    let pair = sample(g, n);
    let scale = 1i64 << (n - n_star);
    let ks: Vec<i64> = e.numerators().collect();
    let h_n = rational::pow2(n as i64);

    let mg: Vec<Rational> = e.points.par_iter().map(|x| m_at(g, x)).collect();
    let mng: Vec<Rational> = e.points.par_iter().map(|x| m_restricted_at(g, x, n)).collect();
    let lo = ks[0] * scale;
    let hi = ks[ks.len() - 1] * scale;
    let tilde_all = m_discrete_values(&pair.tilde_g_n, lo, hi, Variant::Centered);
    let signed_all = m_discrete_values(&pair.g_n, lo, hi, Variant::Centered);
    let pick = |all: &[Rational]| -> Vec<Rational> {
        ks.iter()
            .map(|k| all[(k * scale - lo) as usize].clone())
            .collect()
    };
    let m_tilde = pick(&tilde_all);
    let m_signed = pick(&signed_all);

    let pointwise_identity = ks.iter().enumerate().all(|(i, k)| {
        let x = int(k * scale) / &h_n;
        debug_assert_eq!(x, e.points[i]);
        m_signed[i] <= m_tilde[i] && m_tilde[i] == mng[i]
    });
    let v_mg = variation_of_values(mg.iter());
    let v_mng = variation_of_values(mng.iter());
    let v_tilde_grid = variation_of_values(m_tilde.iter());
    let v_signed_grid = variation_of_values(m_signed.iter());
    let v_signed_full = var_of_m_discrete(&pair.g_n);
    let var_tilde = pair.tilde_g_n.total_var();
    let var_signed = pair.g_n.total_var();
    let var_g = g.total_var();
    let full = var_of_m(g);

    let restricted_equals_tilde = v_mng == v_tilde_grid;
    let grid_below_full = v_signed_grid <= v_signed_full;
    let sample_variation_bound = var_tilde <= var_g && var_signed <= var_g;
    let holds = pointwise_identity && restricted_equals_tilde && grid_below_full && sample_variation_bound;
    Ok(TransferReport {
        n_star,
        n,
        var_grid_m: format_rational(&v_mg),
        var_grid_m_restricted: format_rational(&v_mng),
        var_grid_m_tilde: format_rational(&v_tilde_grid),
        var_grid_m_signed: format_rational(&v_signed_grid),
        var_m_signed: format_rational(&v_signed_full),
        var_tilde: format_rational(&var_tilde),
        var_signed: format_rational(&var_signed),
        var_g: format_rational(&var_g),
        var_m: full.to_string(),
        var_m_approx: full.to_f64(),
        sampling_gap: full.to_f64() - rational::to_f64(&v_mg),
        restriction_gap: format_rational(&(&v_mg - &v_mng)),
        sign_gap: format_rational(&(&v_tilde_grid - &v_signed_grid)),
        pointwise_identity,
        restricted_equals_tilde,
        grid_below_full,
        sample_variation_bound,
        holds,
    })
}

/// `sup_n |M(truncate(G, N))(n) − MG(n)|` over `lo..=hi`.
pub fn truncation_deviation(g: &BVSequence, n: i64, lo: i64, hi: i64) -> Rational {
    let t = truncate(g, n);
    let a = m_discrete_values(g, lo, hi, Variant::Centered);
    let b = m_discrete_values(&t, lo, hi, Variant::Centered);
    a.iter()
        .zip(&b)
        .map(|(x, y)| (x - y).abs())
        .fold(Rational::zero(), |m, d| if d > m { d } else { m })
}
