//! Interval functionals against the brute-force oracle, plus the structural
//! properties: the Poincaré inequality, tail symmetry, level-balance bounds
//! and the partition lower bound.

mod common;

use bvosc::{
    generate_family, interval_mean, interval_oscillation, interval_stats, level_balance,
    level_tails, partition_osc_sum, poincare_quotient, total_variation, AnalyticSignal,
    FamilyParams, Interval, SampledSignal, Signal,
};
use common::*;
use proptest::prelude::*;

const ORACLE_N: usize = 100_000;

fn iv(lo: f64, hi: f64) -> Interval {
    Interval::new(lo, hi).unwrap()
}

#[test]
fn oracle_agreement_on_random_pl_and_pc() {
    let mut r = rng(11);
    let domain = iv(-1.0, 2.0);
    for case in 0..40 {
        let f = if case % 2 == 0 {
            random_pl(&mut r, &domain, 12)
        } else {
            random_pc(&mut r, &domain, 12)
        };
        let i = random_subinterval(&mut r, &domain, 0.1);
        let stats = interval_stats(&f, &i).unwrap();
        let om = oracle_mean(&f, &i, ORACLE_N);
        let oo = oracle_oscillation(&f, &i, ORACLE_N);
        let ot = oracle_total_variation(&f, &i, ORACLE_N);
        let ob = oracle_level_balance(&f, &i, ORACLE_N);
        assert!((stats.mean - om).abs() < 1e-6, "case {case}: mean {} vs {om}", stats.mean);
        assert!((stats.oscillation - oo).abs() < 1e-6, "case {case}: osc");
        assert!((stats.total_variation - ot).abs() < 1e-6, "case {case}: tv");
        assert!((stats.level_balance - ob).abs() < 1e-6, "case {case}: balance");
    }
}

#[test]
fn oracle_agreement_on_closed_forms() {
    let mut r = rng(23);
    let signals: Vec<Signal> = vec![
        Signal::Analytic(AnalyticSignal::polynomial(0.0, vec![0.0, 0.0, 1.0], iv(-1.0, 1.0)).unwrap()),
        Signal::Analytic(
            AnalyticSignal::polynomial(0.2, vec![0.5, -1.0, 0.75, 2.0], iv(-1.0, 1.0)).unwrap(),
        ),
        Signal::Analytic(AnalyticSignal::power(2.5, -1.5, 1.3, -0.2, iv(-1.0, 1.0)).unwrap()),
        Signal::Analytic(AnalyticSignal::jump(0.1, -0.5, 1.5, iv(-1.0, 1.0)).unwrap()),
        Signal::Smooth(bvosc::SmoothSignal::exp(1.0, 1.0, 0.0, iv(-1.0, 1.0))),
        Signal::Analytic(
            generate_family("random_piecewise_affine", 5, &FamilyParams::on(iv(-1.0, 1.0))).unwrap(),
        ),
    ];
    for (k, f) in signals.iter().enumerate() {
        for _ in 0..4 {
            let i = random_subinterval(&mut r, &iv(-1.0, 1.0), 0.15);
            let stats = interval_stats(f, &i).unwrap();
            assert!(
                (stats.mean - oracle_mean(f, &i, ORACLE_N)).abs() < 1e-6,
                "signal {k}: mean on {i}"
            );
            assert!(
                (stats.oscillation - oracle_oscillation(f, &i, ORACLE_N)).abs() < 1e-6,
                "signal {k}: osc on {i}"
            );
            assert!(
                (stats.total_variation - oracle_total_variation(f, &i, ORACLE_N)).abs() < 1e-6,
                "signal {k}: tv on {i}"
            );
            assert!(
                (stats.level_balance - oracle_level_balance(f, &i, ORACLE_N)).abs() < 1e-6,
                "signal {k}: balance on {i}"
            );
        }
    }
}

#[test]
fn one_sided_bound_for_monotone_pl() {
    // osc(f, (x,y)) <= 2 |f(y) - m| on monotone non-constant signals
    let mut r = rng(31);
    for _ in 0..30 {
        let domain = iv(0.0, 1.0);
        let grid = random_grid(&mut r, &domain, 10);
        let mut values: Vec<f64> = Vec::with_capacity(grid.len());
        let mut v = r.random_range(-1.0..1.0);
        for _ in 0..grid.len() {
            values.push(v);
            v += r.random_range(0.01..0.8);
        }
        let f = Signal::Sampled(
            SampledSignal::new(grid, values, bvosc::Interpolation::PiecewiseLinear).unwrap(),
        );
        for _ in 0..10 {
            let i = random_subinterval(&mut r, &domain, 0.05);
            let osc = interval_oscillation(&f, &i).unwrap();
            let m = interval_mean(&f, &i).unwrap();
            let end_dev = (f.eval(i.hi()).unwrap() - m).abs();
            assert!(osc <= 2.0 * end_dev + 1e-12, "osc {osc} vs 2|f(y)-m| {}", 2.0 * end_dev);
        }
    }
}

#[test]
fn balance_vanishes_for_odd_symmetric_pl() {
    let mut r = rng(37);
    for _ in 0..20 {
        // symmetric grid, antisymmetric values about the center
        let half: Vec<f64> = {
            let mut h: Vec<f64> = (0..5).map(|_| r.random_range(0.01..1.0)).collect();
            h.sort_by(|a, b| a.partial_cmp(b).unwrap());
            h
        };
        let mut grid = Vec::new();
        for &x in half.iter().rev() {
            grid.push(-x);
        }
        grid.push(0.0);
        grid.extend(half.iter());
        let offset = r.random_range(-2.0..2.0);
        let mut values = Vec::with_capacity(grid.len());
        let half_vals: Vec<f64> = (0..5).map(|_| r.random_range(-2.0..2.0)).collect();
        for &v in half_vals.iter().rev() {
            values.push(offset - v);
        }
        values.push(offset);
        for &v in &half_vals {
            values.push(offset + v);
        }
        let f = Signal::Sampled(
            SampledSignal::new(grid, values, bvosc::Interpolation::PiecewiseLinear).unwrap(),
        );
        let i = f.domain();
        let balance = level_balance(&f, &i).unwrap();
        assert!(balance.abs() < 1e-12, "odd-symmetric balance {balance}");
    }
}

#[test]
fn partition_sum_dominates_quarter_variation_for_continuous_signals() {
    // On continuous signals the partition sum approaches at least |Df|/4 as
    // the mesh shrinks; the shortfall is confined to the pieces containing a
    // slope break, each worth at most (max slope) * piece length / 2.
    let mut r = rng(41);
    let domain = iv(0.0, 1.0);
    for case in 0..10 {
        let f = random_pl(&mut r, &domain, 8);
        let j = iv(0.05, 0.95);
        let mesh = 1e-3;
        let max_slope = match &f {
            Signal::Sampled(s) => s
                .grid()
                .windows(2)
                .zip(s.values().windows(2))
                .map(|(g, v)| ((v[1] - v[0]) / (g[1] - g[0])).abs())
                .fold(0.0, f64::max),
            _ => unreachable!(),
        };
        let kinks = match &f {
            Signal::Sampled(s) => s.grid().len(),
            _ => unreachable!(),
        };
        let sum = partition_osc_sum(&f, &j, mesh).unwrap();
        let bound = total_variation(&f, &j).unwrap() / 4.0 - kinks as f64 * max_slope * mesh;
        assert!(sum >= bound, "case {case}: sum {sum} < bound {bound}");
    }
}

#[test]
fn quotient_map_entries_respect_structure() {
    let f = Signal::Analytic(
        AnalyticSignal::polynomial(0.0, vec![0.0, 0.0, 1.0], iv(-1.0, 1.0)).unwrap(),
    );
    let map = bvosc::quotient_map(&f, &[0.5, 0.25], 0.125).unwrap();
    let domain = f.domain();
    for e in &map.entries {
        assert!(domain.encloses(&e.interval));
        assert!(e.oscillation >= 0.0);
        assert!(e.total_variation >= 0.0);
        assert!(e.level_balance.abs() <= e.interval.len() + 1e-12);
        if let Some(q) = e.quotient {
            assert!((-1e-12..=0.5 + 1e-12).contains(&q));
        }
    }
    // two scales per interior center
    assert!(map.entries.len() > map.position_grid.len());
}

#[test]
fn jump_windows_without_jump_have_no_quotient() {
    let f = Signal::Analytic(AnalyticSignal::jump(0.5, 0.0, 1.0, iv(0.0, 1.0)).unwrap());
    let map = bvosc::quotient_map(&f, &[0.125], 1.0 / 16.0).unwrap();
    let mut saw_undefined = false;
    for e in &map.entries {
        let contains_jump = e.interval.lo() < 0.5 && 0.5 < e.interval.hi();
        if contains_jump {
            assert!(e.quotient.is_some());
        } else {
            assert!(e.quotient.is_none(), "flat window {} got {:?}", e.interval, e.quotient);
            saw_undefined = true;
        }
    }
    assert!(saw_undefined);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn poincare_inequality_and_tail_symmetry(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let domain = iv(0.0, 1.0);
        let f = if seed % 2 == 0 {
            random_pl(&mut r, &domain, 9)
        } else {
            random_pc(&mut r, &domain, 9)
        };
        let i = random_subinterval(&mut r, &domain, 0.05);
        let stats = interval_stats(&f, &i).unwrap();
        // osc <= tv / 2
        prop_assert!(stats.oscillation <= 0.5 * stats.total_variation + 1e-12);
        // both tails carry half of the oscillation each
        let t = level_tails(&f, &i, stats.mean).unwrap();
        prop_assert!((t.upper - t.lower).abs() < 1e-12);
        // |R| <= |I|
        prop_assert!(stats.level_balance.abs() <= i.len() + 1e-12);
        if let Some(q) = stats.quotient {
            prop_assert!((-1e-12..=0.5 + 1e-12).contains(&q));
        }
    }

    #[test]
    fn oscillation_matches_quotient_definition(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let domain = iv(0.0, 1.0);
        let f = random_pl(&mut r, &domain, 6);
        let i = random_subinterval(&mut r, &domain, 0.05);
        let q = poincare_quotient(&f, &i).unwrap();
        let osc = interval_oscillation(&f, &i).unwrap();
        let tv = total_variation(&f, &i).unwrap();
        match q {
            Some(q) => prop_assert!((q * tv - osc).abs() < 1e-12 * (1.0 + osc.abs())),
            None => prop_assert!(tv == 0.0),
        }
    }
}
