//! Conjugation invariance: `L f F` carries the quotient of `f` over the
//! mapped window, oscillation and variation both scaling by `|L'|`.

mod common;

use bvosc::{
    affine_conjugate, classify_segments, generate_family, interval_oscillation,
    poincare_quotient, quotient_map, sample, total_variation, AffineMap, AnalyticSignal,
    FamilyParams, Interpolation, Interval, SegmentClass, Signal,
};
use common::*;
use rand::prelude::*;

fn iv(lo: f64, hi: f64) -> Interval {
    Interval::new(lo, hi).unwrap()
}

fn random_map(r: &mut rand_chacha::ChaCha8Rng) -> AffineMap {
    let mut scale: f64 = r.random_range(-2.5..2.5);
    if scale.abs() < 0.2 {
        scale = 0.5f64.copysign(scale + f64::MIN_POSITIVE);
    }
    AffineMap::new(scale, r.random_range(-2.0..2.0)).unwrap()
}

#[test]
fn quotient_is_conjugation_invariant() {
    let mut r = rng(101);
    let domain = iv(0.0, 1.0);
    let kinds = [
        "random_affine",
        "random_offcenter_jump",
        "random_monotone_polynomial",
        "random_piecewise_affine",
    ];
    for trial in 0..60 {
        let kind = kinds[trial % kinds.len()];
        let analytic = generate_family(kind, trial as u64, &FamilyParams::on(domain)).unwrap();
        let f: Signal = if trial % 5 == 0 {
            let mode = if kind.contains("jump") {
                Interpolation::PiecewiseConstant
            } else {
                Interpolation::PiecewiseLinear
            };
            // grid chosen so the jump lands exactly on a cell boundary
            Signal::Sampled(sample(&analytic, 641, mode).unwrap())
        } else {
            Signal::Analytic(analytic)
        };
        let l = random_map(&mut r);
        let fm = random_map(&mut r);
        let g = affine_conjugate(&f, &l, &fm).unwrap();

        for _ in 0..5 {
            let old_window = random_subinterval(&mut r, &domain, 0.1);
            // the window in the conjugate's coordinates
            let new_window = fm.inverse().map_interval(&old_window);
            let q_old = poincare_quotient(&f, &old_window).unwrap();
            let q_new = poincare_quotient(&g, &new_window).unwrap();
            match (q_old, q_new) {
                (Some(a), Some(b)) => {
                    assert!((a - b).abs() < 1e-10, "{kind} trial {trial}: {a} vs {b}")
                }
                (None, None) => {}
                other => panic!("{kind} trial {trial}: quotient defined on one side only {other:?}"),
            }
            // osc and tv scale by |L'|
            let osc_old = interval_oscillation(&f, &old_window).unwrap();
            let osc_new = interval_oscillation(&g, &new_window).unwrap();
            assert!(
                (osc_new - l.scale().abs() * osc_old).abs() < 1e-10 * (1.0 + osc_new.abs()),
                "{kind} trial {trial}: osc {osc_new} vs {}",
                l.scale().abs() * osc_old
            );
            let tv_old = total_variation(&f, &old_window).unwrap();
            let tv_new = total_variation(&g, &new_window).unwrap();
            assert!((tv_new - l.scale().abs() * tv_old).abs() < 1e-10 * (1.0 + tv_new.abs()));
        }
    }
}

#[test]
fn conjugating_the_range_scales_oscillation() {
    // f = x^2 on (-1, 1), L doubling the range: osc doubles on every window
    let f = Signal::Analytic(
        AnalyticSignal::polynomial(0.0, vec![0.0, 0.0, 1.0], iv(-1.0, 1.0)).unwrap(),
    );
    let l = AffineMap::new(2.0, 0.0).unwrap();
    let g = affine_conjugate(&f, &l, &AffineMap::identity()).unwrap();
    let mut r = rng(7);
    for _ in 0..20 {
        let w = random_subinterval(&mut r, &iv(-1.0, 1.0), 0.05);
        let a = interval_oscillation(&f, &w).unwrap();
        let b = interval_oscillation(&g, &w).unwrap();
        assert!((b - 2.0 * a).abs() < 1e-12 * (1.0 + b.abs()), "{b} vs {}", 2.0 * a);
        // cross-check one side against the quadrature oracle
        let ob = oracle_oscillation(&g, &w, 50_000);
        assert!((b - ob).abs() < 1e-6);
    }
}

#[test]
fn involution_on_grids() {
    let mut r = rng(55);
    let domain = iv(0.0, 1.0);
    for trial in 0..20 {
        let f = if trial % 2 == 0 {
            random_pl(&mut r, &domain, 10)
        } else {
            random_pc(&mut r, &domain, 10)
        };
        let l = random_map(&mut r);
        let fm = random_map(&mut r);
        let g = affine_conjugate(&f, &l, &fm).unwrap();
        let back = affine_conjugate(&g, &l.inverse(), &fm.inverse()).unwrap();
        let (orig, round) = match (&f, &back) {
            (Signal::Sampled(a), Signal::Sampled(b)) => (a.clone(), b.clone()),
            _ => unreachable!(),
        };
        for (x, y) in orig.grid().iter().zip(round.grid()) {
            assert!((x - y).abs() < 1e-12, "grid drift {x} vs {y}");
        }
        // pointwise on the interior: the value pinned to the closed right
        // endpoint is a convention, not data
        for k in 0..200 {
            let x = domain.lo() + domain.len() * (k as f64 + 0.5) / 200.0;
            let a = orig.eval(x).unwrap();
            let b = round.eval(x).unwrap();
            assert!((a - b).abs() < 1e-12, "value drift at {x}: {a} vs {b}");
        }
    }
}

#[test]
fn classification_is_conjugation_invariant() {
    let mut r = rng(77);
    let domain = iv(0.0, 1.0);
    let scales = [0.5, 0.25, 0.125];
    let stride = 1.0 / 32.0;
    for trial in 0..12 {
        let kind = ["random_affine", "random_monotone_polynomial", "random_piecewise_affine"]
            [trial % 3];
        let f = Signal::Analytic(
            generate_family(kind, 1000 + trial as u64, &FamilyParams::on(domain)).unwrap(),
        );
        let l = random_map(&mut r);
        let fm = random_map(&mut r);
        let g = affine_conjugate(&f, &l, &fm).unwrap();

        let map_f = quotient_map(&f, &scales, stride).unwrap();
        let rep_f = classify_segments(&f, &map_f, 1e-3).unwrap();

        let s = fm.scale().abs();
        let new_scales: Vec<f64> = scales.iter().map(|x| x / s).collect();
        let map_g = quotient_map(&g, &new_scales, stride / s).unwrap();
        let rep_g = classify_segments(&g, &map_g, 1e-3).unwrap();

        let mut classes_f: Vec<SegmentClass> = rep_f.segments.iter().map(|x| x.class).collect();
        let classes_g: Vec<SegmentClass> = rep_g.segments.iter().map(|x| x.class).collect();
        let mut bounds_f: Vec<f64> = rep_f.segments.iter().skip(1).map(|x| x.interval.lo()).collect();
        // boundaries of g mapped back into f's coordinates
        let mut bounds_g: Vec<f64> = rep_g
            .segments
            .iter()
            .skip(1)
            .map(|x| fm.apply(x.interval.lo()))
            .collect();
        if fm.scale() < 0.0 {
            classes_f.reverse();
            bounds_f.reverse();
        }
        bounds_g.sort_by(|a, b| a.partial_cmp(b).unwrap());
        bounds_f.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(classes_f, classes_g, "{kind} trial {trial}");
        for (a, b) in bounds_f.iter().zip(&bounds_g) {
            assert!((a - b).abs() <= stride + 1e-9, "{kind} trial {trial}: boundary {a} vs {b}");
        }
    }
}
