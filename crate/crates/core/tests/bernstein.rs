mod common;

use bernstein_cert::rational::int;
use bernstein_cert::{
    basis_polynomial, multi_indices, to_bernstein, to_bernstein_by_solve, BernsteinForm,
    CertStatus, Polynomial, Simplex,
};
use common::*;
use rand::Rng;

#[test]
fn partition_of_unity() {
    let mut r = rng(21);
    for _ in 0..3 {
        let s = simplex(&mut r, 2);
        let bs = s.barycentric_system();
        for d in 0..=6 {
            let total = multi_indices(3, d)
                .iter()
                .map(|a| basis_polynomial(&bs, d, a).unwrap())
                .fold(Polynomial::zero(2), |acc, b| &acc + &b);
            assert_eq!(total, Polynomial::one(2), "d = {d}");
        }
    }
}

#[test]
fn substitution_agrees_with_linear_solve() {
    let mut r = rng(22);
    for n in 1..=3 {
        for _ in 0..6 {
            let s = simplex(&mut r, n);
            let p = polynomial(&mut r, n, 3, 4);
            let d = p.degree() + r.gen_range(0..=1);
            let bs = s.barycentric_system();
            assert_eq!(
                to_bernstein(&p, &bs, d).unwrap(),
                to_bernstein_by_solve(&p, &bs, d).unwrap()
            );
        }
    }
}

#[test]
fn conversion_round_trip() {
    let mut r = rng(23);
    for _ in 0..50 {
        let s = simplex(&mut r, 2);
        let p = polynomial(&mut r, 2, 5, 6);
        let d = p.degree().max(r.gen_range(0..=5));
        let f = to_bernstein(&p, &s.barycentric_system(), d).unwrap();
        assert_eq!(f.to_polynomial(), p);
        // Coefficient maps survive a second trip unchanged.
        let again = to_bernstein(&f.to_polynomial(), f.system(), d).unwrap();
        assert_eq!(again.all_coeffs(), f.all_coeffs());
    }
}

#[test]
fn uniqueness_over_two_constructions() {
    // Build a form from random coefficients, expand, convert back.
    let mut r = rng(24);
    for _ in 0..10 {
        let s = simplex(&mut r, 2);
        let bs = s.barycentric_system();
        let coeffs: Vec<_> = multi_indices(3, 3)
            .into_iter()
            .map(|a| (a, rational(&mut r, 5, 3)))
            .collect();
        let f = BernsteinForm::new(bs.clone(), 3, coeffs).unwrap();
        let g = to_bernstein(&f.to_polynomial(), &bs, 3).unwrap();
        assert_eq!(f, g);
    }
}

#[test]
fn elevation_matches_direct_conversion() {
    let std2 = Simplex::standard(2).barycentric_system();
    let p = Polynomial::parse("x1^2 + x2^2 - x1*x2", 2).unwrap();
    let f = to_bernstein(&p, &std2, 2).unwrap();
    assert_eq!(f.elevate(4), to_bernstein(&p, &std2, 6).unwrap());

    let mut r = rng(25);
    for _ in 0..10 {
        let s = simplex(&mut r, 2);
        let q = polynomial(&mut r, 2, 3, 5);
        let f = to_bernstein(&q, &s.barycentric_system(), q.degree()).unwrap();
        let k = r.gen_range(1..=3);
        let up = f.elevate(k);
        assert_eq!(up.to_polynomial(), q);
        assert_eq!(up, to_bernstein(&q, &s.barycentric_system(), q.degree() + k).unwrap());
    }
}

#[test]
fn enclosure_contains_sampled_values() {
    let mut r = rng(26);
    for _ in 0..10 {
        let s = simplex(&mut r, 2);
        let p = polynomial(&mut r, 2, 4, 5);
        let f = to_bernstein(&p, &s.barycentric_system(), p.degree()).unwrap();
        let (lo, hi) = f.enclosure();
        for _ in 0..100 {
            let v = p.evaluate(&point_in(&mut r, &s)).unwrap();
            assert!(lo <= v && v <= hi);
        }
    }
}

#[test]
fn positive_certificate_implies_positive_samples() {
    let mut r = rng(27);
    let mut seen = 0;
    for _ in 0..200 {
        let s = simplex(&mut r, 2);
        let p = &polynomial(&mut r, 2, 2, 3) + &Polynomial::constant(2, int(12));
        let f = to_bernstein(&p, &s.barycentric_system(), p.degree() + 2).unwrap();
        if f.status() != CertStatus::Positive {
            continue;
        }
        seen += 1;
        for _ in 0..20 {
            assert!(p.evaluate(&point_in(&mut r, &s)).unwrap() > int(0));
        }
    }
    assert!(seen > 10, "only {seen} positive certificates sampled");
}

#[test]
fn counterexample_coefficients_and_status() {
    let p = Polynomial::parse(
        "21*x1^4 + 24*x1^3*x2 - 36*x1^3 + 18*x1^2*x2^2 - 24*x1^2*x2 + 18*x1^2 \
         + 12*x1*x2^3 - 12*x1*x2^2 + 30*x2^4",
        2,
    )
    .unwrap();
    let f = to_bernstein(&p, &Simplex::standard(2).barycentric_system(), 4).unwrap();
    let nz: Vec<(Vec<u32>, _)> = f.nonzero().map(|(a, v)| (a.0.clone(), v.clone())).collect();
    assert_eq!(
        nz,
        vec![
            (vec![0, 0, 4], int(30)),
            (vec![0, 4, 0], int(3)),
            (vec![1, 1, 2], int(-1)),
            (vec![1, 2, 1], int(1)),
            (vec![2, 2, 0], int(3)),
        ]
    );
    match f.status() {
        CertStatus::Indeterminate { witness } => {
            assert_eq!(witness.iter().map(|w| w.0.clone()).collect::<Vec<_>>(), vec![vec![1, 1, 2]])
        }
        other => panic!("unexpected {other:?}"),
    }
    assert_eq!(f.enclosure(), (int(-1), int(30)));
    assert_eq!(f.elevate(2).to_polynomial(), p);
}
