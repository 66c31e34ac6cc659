use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use harper_torus::exact::q;
use harper_torus::nct_rep::{build_rep, characters, common_denominator, grid_points, relation_defect, rep_dimension, CMat};
use harper_torus::torus_poly::ThetaSpec;
use harper_torus::{Error, Real};

#[test]
fn representation_dimensions() {
    let cases: [(usize, Vec<_>, usize); 5] = [
        (2, vec![q(1, 3)], 3),
        (2, vec![q(0, 1)], 1),
        // one tensor factor per pair, so the dimension is the product of denominators
        (3, vec![q(1, 2), q(1, 2), q(1, 2)], 8),
        (3, vec![q(1, 5), q(1, 7), q(1, 11)], 385),
        (3, vec![q(0, 1), q(0, 1), q(1, 4)], 4),
    ];
    for (n, entries, d) in cases {
        let theta = ThetaSpec::rational(n, &entries).unwrap();
        assert_eq!(rep_dimension(&theta).unwrap(), d, "{entries:?}");
        let rep = build_rep(&theta, &vec![0.0; n]).unwrap();
        assert_eq!(rep.d, d);
        assert!(relation_defect(&rep) < 1e-12);
    }
}

#[test]
fn irrational_theta_has_no_finite_representation() {
    let theta = ThetaSpec::new(2, vec![Real::Approx(0.2137)]).unwrap();
    assert!(matches!(build_rep(&theta, &[0.0, 0.0]), Err(Error::NonRational)));
    assert_eq!(common_denominator(&theta), None);
}

#[test]
fn characters_are_one_dimensional_phases() {
    let theta = ThetaSpec::zero(2);
    let reps = characters(&theta, 4).unwrap();
    let pts = grid_points(2, 4);
    assert_eq!(reps.len(), 16);
    for (r, k) in reps.iter().zip(&pts) {
        assert_eq!(r.d, 1);
        for (g, kj) in r.gens.iter().zip(k) {
            assert!((g.phase[0] - Complex64::from_polar(1.0, *kj)).norm() < 1e-15);
        }
    }
    assert!(characters(&ThetaSpec::rational(2, &[q(1, 3)]).unwrap(), 4).is_err());
}

#[test]
fn grid_points_are_uniform_with_last_index_fastest() {
    let pts = grid_points(2, 3);
    assert_eq!(pts.len(), 9);
    assert_eq!(pts[1], vec![0.0, 2.0 * PI / 3.0]);
    assert_eq!(pts[3], vec![2.0 * PI / 3.0, 0.0]);
}

#[test]
fn generators_are_unitary_monomials() {
    let theta = ThetaSpec::rational(3, &[q(1, 5), q(1, 7), q(1, 11)]).unwrap();
    let rep = build_rep(&theta, &[0.4, 1.3, 2.2]).unwrap();
    for g in &rep.gens {
        let mut seen = vec![false; rep.d];
        for (j, &p) in g.perm.iter().enumerate() {
            assert!(!seen[p]);
            seen[p] = true;
            assert!((g.phase[j].norm() - 1.0).abs() < 1e-14);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn relations_hold_at_random_twists(
        a in 0i64..6, b in 0i64..6, e in 0i64..6,
        t in prop::collection::vec(0.0f64..6.3, 3),
    ) {
        let theta = ThetaSpec::rational(3, &[q(a, 6), q(b, 4), q(e, 3)]).unwrap();
        let rep = build_rep(&theta, &t).unwrap();
        prop_assert!(relation_defect(&rep) < 1e-12);
    }
}

#[test]
fn group_commutators_are_scalar() {
    // U_iU_jU_i*U_j* = e^{2πiθ_ij}·I by direct multiplication
    for (n, entries, want) in [(2, vec![q(1, 3)], vec![2.0 * PI / 3.0]), (3, vec![q(1, 2); 3], vec![PI; 3])] {
        let theta = ThetaSpec::rational(n, &entries).unwrap();
        let rep = build_rep(&theta, &vec![0.9; n]).unwrap();
        let u: Vec<_> = rep.gens.iter().map(|g| g.to_dense()).collect();
        let adj = |m: &CMat| CMat::from_fn(m.ncols(), m.nrows(), |i, j| m[(j, i)].conj());
        let mut idx = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                let ui_uj: CMat = &u[i] * &u[j];
                let vi_vj: CMat = &adj(&u[i]) * &adj(&u[j]);
                let comm: CMat = &ui_uj * &vi_vj;
                let w = Complex64::from_polar(1.0, want[idx]);
                idx += 1;
                for r in 0..rep.d {
                    for s in 0..rep.d {
                        let e = if r == s { w } else { Complex64::new(0.0, 0.0) };
                        assert!((comm[(r, s)] - e).norm() < 1e-12);
                    }
                }
            }
        }
    }
}
