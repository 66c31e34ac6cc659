use faer::Mat;
use num_complex::Complex64;
use proptest::prelude::*;

use harper_torus::exact::q;
use harper_torus::nct_rep::{build_rep, evaluate, CMat};
use harper_torus::torus_poly::{ThetaSpec, TorusElement, TorusMatrix};
use harper_torus::{Error, Real};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn theta2() -> ThetaSpec {
    ThetaSpec::rational(2, &[q(2, 5)]).unwrap()
}

fn theta3() -> ThetaSpec {
    ThetaSpec::rational(3, &[q(1, 3), q(1, 2), q(2, 3)]).unwrap()
}

fn max_diff(a: &CMat, b: &CMat) -> f64 {
    let mut w: f64 = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            w = w.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    w
}

fn adjoint(m: &CMat) -> CMat {
    Mat::from_fn(m.ncols(), m.nrows(), |i, j| m[(j, i)].conj())
}

fn element(theta: ThetaSpec) -> impl Strategy<Value = TorusElement> {
    let n = theta.n;
    prop::collection::vec((prop::collection::vec(-2i32..=2, n), -1.0f64..1.0, -1.0f64..1.0), 1..4).prop_map(
        move |terms| {
            let mut x = TorusElement::zero(&theta);
            for (e, re, im) in terms {
                x = &x + &TorusElement::monomial(&theta, e, c(re, im));
            }
            x
        },
    )
}

fn matrix(theta: ThetaSpec, k: usize) -> impl Strategy<Value = TorusMatrix> {
    prop::collection::vec(element(theta.clone()), k * k).prop_map(move |entries| {
        let rows = entries.chunks(k).map(|r| r.to_vec()).collect();
        TorusMatrix::from_rows(&theta, rows)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_is_multiplicative(x in element(theta3()), y in element(theta3()), t in prop::collection::vec(0.0f64..6.3, 3)) {
        let rep = build_rep(&theta3(), &t).unwrap();
        let xy = rep.eval_element(&(&x * &y)).unwrap();
        let prod: CMat = &rep.eval_element(&x).unwrap() * &rep.eval_element(&y).unwrap();
        prop_assert!(max_diff(&xy, &prod) < 1e-10);
    }

    #[test]
    fn evaluation_respects_adjoint(x in element(theta3()), t in prop::collection::vec(0.0f64..6.3, 3)) {
        let rep = build_rep(&theta3(), &t).unwrap();
        let lhs = rep.eval_element(&x.adjoint()).unwrap();
        prop_assert!(max_diff(&lhs, &adjoint(&rep.eval_element(&x).unwrap())) < 1e-12);
    }

    #[test]
    fn matrix_evaluation_is_a_homomorphism(a in matrix(theta2(), 2), b in matrix(theta2(), 2), t in prop::collection::vec(0.0f64..6.3, 2)) {
        let rep = build_rep(&theta2(), &t).unwrap();
        let ab = evaluate(&(&a * &b), &rep).unwrap();
        let prod: CMat = &evaluate(&a, &rep).unwrap() * &evaluate(&b, &rep).unwrap();
        prop_assert!(max_diff(&ab, &prod) < 1e-10);
        let sum = evaluate(&(&a + &b), &rep).unwrap();
        let direct: CMat = &evaluate(&a, &rep).unwrap() + &evaluate(&b, &rep).unwrap();
        prop_assert!(max_diff(&sum, &direct) < 1e-12);
        let adj = evaluate(&a.adjoint(), &rep).unwrap();
        prop_assert!(max_diff(&adj, &adjoint(&evaluate(&a, &rep).unwrap())) < 1e-12);
    }

    #[test]
    fn multiplication_is_associative(x in element(theta3()), y in element(theta3()), z in element(theta3())) {
        let l = &(&x * &y) * &z;
        let r = &x * &(&y * &z);
        prop_assert!((&l - &r).max_norm() < 1e-12);
    }

    #[test]
    fn adjoint_reverses_products(x in element(theta3()), y in element(theta3())) {
        let l = (&x * &y).adjoint();
        let r = &y.adjoint() * &x.adjoint();
        prop_assert!((&l - &r).max_norm() < 1e-12);
    }
}

#[test]
fn generators_obey_the_commutation_relation() {
    // U₁U₂ = e^{2πiθ}U₂U₁ symbolically
    let th = ThetaSpec::new(2, vec![Real::Approx(0.2137)]).unwrap();
    let u = TorusElement::generator(&th, 0);
    let v = TorusElement::generator(&th, 1);
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 0.2137);
    let diff = &(&u * &v) - &(&v * &u).scale(w);
    assert!(diff.max_norm() < 1e-14);
}

#[test]
fn unitaries_and_inverse_powers() {
    let th = theta3();
    for i in 0..3 {
        let g = TorusElement::generator(&th, i);
        let one = &g * &g.adjoint();
        assert!((&one - &TorusElement::one(&th)).max_norm() < 1e-15);
        assert!((&g.pow(-2) - &g.adjoint().pow(2)).max_norm() < 1e-15);
    }
}

#[test]
fn mixed_theta_is_rejected() {
    let a = TorusElement::generator(&theta2(), 0);
    let b = TorusElement::generator(&ThetaSpec::zero(2), 0);
    assert!(matches!(a.try_mul(&b), Err(Error::ThetaMismatch)));
    assert!(matches!(a.try_add(&b), Err(Error::ThetaMismatch)));
}

#[test]
fn elementary_matrices_multiply_like_matrix_units() {
    let th = theta2();
    for (i, j, k, l) in [(0, 1, 1, 0), (0, 1, 0, 1), (1, 0, 0, 0)] {
        let p = &TorusMatrix::elementary(&th, 2, i, j) * &TorusMatrix::elementary(&th, 2, k, l);
        if j == k {
            assert!(p.is_elementary(i, l, 1e-14).0);
        } else {
            assert!(p.max_norm() < 1e-15);
        }
    }
}

#[test]
fn single_monomial_detection() {
    let th = theta2();
    let mut m = TorusMatrix::zeros(&th, 2);
    m.set(1, 0, TorusElement::monomial(&th, vec![1, -1], c(0.0, 2.0)));
    let (i, j, e, coef) = m.single_monomial(1e-12).unwrap();
    assert_eq!((i, j, e), (1, 0, vec![1, -1]));
    assert!((coef - c(0.0, 2.0)).norm() < 1e-15);
    m.set(0, 0, TorusElement::one(&th));
    assert!(m.single_monomial(1e-12).is_none());
}
