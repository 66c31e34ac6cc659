use std::f64::consts::PI;

use proptest::prelude::*;

use harper_torus::exact::q;
use harper_torus::harper_model::build_theta;
use harper_torus::lattice_graph::Preset;
use harper_torus::nct_rep::grid_points;
use harper_torus::spectral::{
    band_sweep, best_label, butterfly, cluster_points, default_resolution, degeneracy_locus, detect_gaps, farey_path,
    gap_labels, gaps_stable, persistent_gaps, refine_degeneracy, sample_spectrum, spectrum_at, theta_f64, twist_sweep,
    Gap, SpectrumResult,
};
use harper_torus::Real;

fn exact(v: &[(i64, i64)]) -> Vec<Real> {
    v.iter().map(|&(a, b)| Real::Exact(q(a, b))).collect()
}

fn synthetic(eigenvalues: Vec<Vec<f64>>) -> SpectrumResult {
    let n = eigenvalues.len();
    SpectrumResult {
        model: "synthetic".into(),
        theta: vec![],
        k: eigenvalues[0].len(),
        d: 1,
        samples: vec![vec![0.0]; n],
        eigenvalues,
    }
}

#[test]
fn band_sweep_rows_and_columns() {
    let m = build_theta(Preset::Honeycomb, &[Real::zero()]).unwrap();
    let s = band_sweep(&m, 4).unwrap();
    assert_eq!(s.sample_count(), 16);
    assert!(s.eigenvalues.iter().all(|e| e.len() == 2));
    let mut buf = Vec::new();
    s.write_band_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().count(), 17);
    assert_eq!(text.lines().next().unwrap(), "k1,k2,E_1,E_2");
    assert!(band_sweep(&build_theta(Preset::Honeycomb, &exact(&[(1, 5)])).unwrap(), 4).is_err());
}

#[test]
fn band_sweep_points_match_the_spec_examples() {
    let m = build_theta(Preset::Honeycomb, &[Real::zero()]).unwrap();
    let s = band_sweep(&m, 3).unwrap();
    let pts = grid_points(2, 3);
    let at = |k: [f64; 2]| {
        let i = pts.iter().position(|p| (p[0] - k[0]).abs() < 1e-12 && (p[1] - k[1]).abs() < 1e-12).unwrap();
        s.eigenvalues[i].clone()
    };
    let e0 = at([0.0, 0.0]);
    assert!((e0[0] + 3.0).abs() < 1e-12 && (e0[1] - 3.0).abs() < 1e-12);
    let dirac = at([2.0 * PI / 3.0, 4.0 * PI / 3.0]);
    assert!(dirac.iter().all(|e| e.abs() < 1e-12));
}

#[test]
fn degeneracy_refinement_reaches_the_dirac_points() {
    let m = build_theta(Preset::Honeycomb, &[Real::zero()]).unwrap();
    let grid = 60;
    let clusters = cluster_points(&degeneracy_locus(&m, grid, 0.2).unwrap(), grid);
    assert_eq!(clusters.len(), 2);
    for c in &clusters {
        let (k, spacing) = refine_degeneracy(&m, &c.best.k, 0.1).unwrap();
        assert!(spacing < 1e-8, "spacing {spacing}");
        let f = (1.0 + k[0].cos() + k[1].cos()).hypot(k[0].sin() + k[1].sin());
        assert!(f < 1e-8);
    }
}

#[test]
fn detect_gaps_counts_states_below() {
    let s = synthetic(vec![vec![0.0, 1.0, 5.0], vec![0.5, 1.5, 6.0]]);
    let gaps = detect_gaps(&s, 1.2);
    assert_eq!(gaps.len(), 1);
    assert_eq!((gaps[0].lower, gaps[0].upper), (1.5, 5.0));
    // four of six eigenvalues below, normalized by samples · d
    assert!((gaps[0].ids - 2.0).abs() < 1e-15);
}

#[test]
fn best_label_prefers_small_integers() {
    let (l, r) = best_label(0.4, &[0.2], 5);
    assert_eq!((l.m, l.n.clone()), (0, vec![2]));
    assert!(r < 1e-15);
    let (l, _) = best_label(1.0, &[0.2], 5);
    assert_eq!((l.m, l.n), (1, vec![0]));
}

#[test]
fn persistence_drops_shrinking_holes() {
    let g = |lower: f64, upper: f64, ids: f64| Gap { lower, upper, ids };
    let coarse = vec![g(-1.0, -0.5, 0.4), g(-0.01, 0.01, 1.0)];
    let fine = vec![g(-1.0, -0.52, 0.4), g(-0.005, 0.005, 1.0)];
    let kept = persistent_gaps(&coarse, &fine);
    assert_eq!(kept, vec![coarse[0].clone()]);
    assert!(gaps_stable(&kept, &kept));
    assert!(!gaps_stable(&coarse, &fine[..1]));
}

#[test]
fn hofstadter_one_third_has_two_labelled_gaps() {
    let m = build_theta(Preset::Zn(2), &exact(&[(1, 3)])).unwrap();
    let s = twist_sweep(&m, 32).unwrap();
    let delta = default_resolution(&s);
    let gaps = persistent_gaps(&detect_gaps(&s, delta), &detect_gaps(&twist_sweep(&m, 64).unwrap(), delta));
    let labels = gap_labels(&gaps, &theta_f64(&m), 3);
    assert_eq!(labels.len(), 2);
    assert!((labels[0].ids - 1.0 / 3.0).abs() < 1e-12 && (labels[1].ids - 2.0 / 3.0).abs() < 1e-12);
    assert_eq!(labels[0].label.n, vec![1]);
}

#[test]
fn honeycomb_gaps_are_finite_sorted_and_stable() {
    // at θ = p/q the number of gaps is at most k·d − 1
    let m = build_theta(Preset::Honeycomb, &exact(&[(1, 5)])).unwrap();
    let sweep = |g| twist_sweep(&m, g).unwrap();
    let s32 = sweep(32);
    let delta = default_resolution(&s32);
    let (g32, g64, g128) = (detect_gaps(&s32, delta), detect_gaps(&sweep(64), delta), detect_gaps(&sweep(128), delta));
    let kept = persistent_gaps(&g32, &g64);
    assert!(kept.len() < s32.k * s32.d);
    assert!(gaps_stable(&kept, &persistent_gaps(&g64, &g128)));
    for w in kept.windows(2) {
        assert!(w[0].upper <= w[1].lower && w[0].ids <= w[1].ids);
    }
    assert!(kept.iter().all(|g| g.ids >= 0.0 && g.ids <= 2.0));
}

#[test]
fn farey_path_is_sorted_and_reduced() {
    let f = farey_path(5);
    // |F_5| = 11
    assert_eq!(f.len(), 11);
    assert!(f.windows(2).all(|w| w[0] < w[1]));
    assert_eq!((f[0], *f.last().unwrap()), (q(0, 1), q(1, 1)));
}

#[test]
fn butterfly_rows_cover_every_flux() {
    let rows = butterfly(Preset::Zn(2), &farey_path(3), &[1], 3, 4).unwrap();
    for t in farey_path(3) {
        assert!(rows.iter().any(|r| r.flux_num == *t.numer() && r.flux_den == *t.denom()));
    }
    assert!(rows.iter().all(|r| r.eigenvalue.abs() <= 4.0 + 1e-12));
    assert!(butterfly(Preset::Zn(2), &[q(1, 7)], &[1], 3, 4).is_err());
}

#[test]
fn sample_spectrum_is_deterministic() {
    let m = build_theta(Preset::Gyroid, &exact(&[(1, 2), (1, 2), (1, 2)])).unwrap();
    let pts = grid_points(3, 3);
    let a = sample_spectrum(&m, &pts).unwrap();
    let b = sample_spectrum(&m, &pts).unwrap();
    assert_eq!(a.eigenvalues, b.eigenvalues);
    assert!(a.eigenvalues.iter().all(|e| e.len() == 4 * 8));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The honeycomb is bipartite, so its spectrum is symmetric under E ↦ −E.
    #[test]
    fn honeycomb_spectrum_is_symmetric(num in -6i64..=6, den in 1i64..=7, t in prop::collection::vec(0.0f64..6.3, 2)) {
        let m = build_theta(Preset::Honeycomb, &exact(&[(num, den)])).unwrap();
        let ev = spectrum_at(&m, &t).unwrap();
        let n = ev.len();
        for i in 0..n {
            prop_assert!((ev[i] + ev[n - 1 - i]).abs() < 1e-10);
        }
    }

    #[test]
    fn ids_is_monotone_and_bounded(num in 0i64..5, grid in 4usize..10) {
        let m = build_theta(Preset::Honeycomb, &exact(&[(num, 5)])).unwrap();
        let s = twist_sweep(&m, grid).unwrap();
        let gaps = detect_gaps(&s, default_resolution(&s));
        for w in gaps.windows(2) {
            prop_assert!(w[0].ids <= w[1].ids && w[0].upper <= w[1].lower);
        }
        prop_assert!(gaps.iter().all(|g| g.ids >= 0.0 && g.ids <= s.k as f64));
    }
}
