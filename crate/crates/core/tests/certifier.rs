mod common;

use bernstein_cert::counterexample::{counterexample_polynomial, quadratic_example};
use bernstein_cert::rational::{int, rat};
use bernstein_cert::{
    certify, restrict_general, to_bernstein, verify_tree, CertStatus, CertificateTree,
    CertifyConfig, Outcome, Polynomial, Simplex, Strategy, Target,
};
use common::*;

fn config(strategy: Strategy, target: Target, max_depth: u32, max_degree: u32) -> CertifyConfig {
    CertifyConfig {
        max_depth,
        max_degree,
        strategy,
        target,
        theta: rat(1, 2),
    }
}

#[test]
fn quadratic_certified_by_one_bisection() {
    for strategy in [Strategy::EdgeBisection, Strategy::WitnessGuidedSplit] {
        let t = certify(
            &quadratic_example(),
            &Simplex::standard(2),
            &config(strategy, Target::Nonnegative, 6, 2),
        )
        .unwrap();
        assert!(t.is_certified());
        assert_eq!(t.depth(), 1);
        let split = t.root.split.as_ref().unwrap();
        assert_eq!(split.edge, (1, 2));
        // Index order (2,0,0) (1,1,0) (1,0,1) (0,2,0) (0,1,1) (0,0,2); the new
        // vertex (1/2,1/2) sits in slot 2 of the first child and slot 1 of
        // the second, where the coefficient is P(1/2,1/2) = 1/4.
        let expected = [
            vec![int(0), int(0), int(0), int(1), rat(1, 4), rat(1, 4)],
            vec![int(0), int(0), int(0), rat(1, 4), rat(1, 4), int(1)],
        ];
        for (child, want) in t.root.children.iter().zip(expected) {
            let values: Vec<_> = child.form.all_coeffs().into_iter().map(|(_, v)| v).collect();
            assert_eq!(values, want);
            assert_eq!(child.status, CertStatus::Nonnegative);
        }
        assert!(verify_tree(&t).unwrap());
    }
}

#[test]
fn quadratic_is_not_positive_anywhere_near_origin() {
    let t = certify(
        &quadratic_example(),
        &Simplex::standard(2),
        &config(Strategy::WitnessGuidedSplit, Target::Positive, 3, 2),
    )
    .unwrap();
    assert_eq!(t.outcome, Outcome::Exhausted);
    assert!(verify_tree(&t).unwrap());
}

fn touches_left_edge(s: &Simplex) -> bool {
    let origin = [int(0), int(0)];
    let has_origin = s.vertices().iter().any(|v| v.as_slice() == origin);
    let on_axis = s
        .vertices()
        .iter()
        .any(|v| v[0] == int(0) && v[1] > int(0));
    has_origin && on_axis
}

#[test]
fn counterexample_exhausts_every_strategy() {
    let p = counterexample_polynomial();
    for strategy in Strategy::ALL {
        let t = certify(&p, &Simplex::standard(2), &config(strategy, Target::Nonnegative, 6, 8))
            .unwrap();
        assert_eq!(t.outcome, Outcome::Exhausted, "{strategy:?}");
        assert!(!t.frontier.is_empty());
        let deepest = t.deepest_failing().unwrap();
        assert!(!deepest.witness.is_empty());
        // The corner leaf at the origin along the x2 axis fails.
        let corner: Vec<_> = t
            .root
            .leaves()
            .into_iter()
            .filter(|(_, n)| touches_left_edge(n.simplex()))
            .collect();
        assert!(!corner.is_empty(), "{strategy:?}");
        for (_, leaf) in corner {
            assert!(matches!(leaf.status, CertStatus::Indeterminate { .. }));
            assert!(leaf.form.enclosure().0 < int(0));
        }
        assert!(verify_tree(&t).unwrap(), "{strategy:?}");
    }
}

#[test]
fn elevation_only_finds_positive_certificate() {
    let p = Polynomial::parse("x1^2 + x2^2 - x1*x2 + 1/10", 2).unwrap();
    let t = certify(
        &p,
        &Simplex::standard(2),
        &config(Strategy::ElevationOnly, Target::Positive, 0, 20),
    )
    .unwrap();
    assert!(t.is_certified());
    assert_eq!(t.root.elevated_from, Some(2));
    assert_eq!(t.root.form.degree(), 4);
    assert!(verify_tree(&t).unwrap());
}

fn assert_sound(t: &CertificateTree, p: &Polynomial) {
    let s = t.root.simplex();
    for pt in simplex_grid(s, 24) {
        let v = p.evaluate(&pt).unwrap();
        match t.config.target {
            Target::Positive => assert!(v > int(0)),
            Target::Nonnegative => assert!(v >= int(0)),
        }
    }
}

#[test]
fn certified_trees_are_sound_and_partitioned() {
    let mut r = rng(41);
    let mut certified = 0;
    for k in 0..12 {
        let s = simplex(&mut r, 2);
        let p = &polynomial(&mut r, 2, 3, 3) + &Polynomial::constant(2, int(6));
        let strategy = Strategy::ALL[k % 4];
        let target = if k % 2 == 0 { Target::Positive } else { Target::Nonnegative };
        let t = certify(&p, &s, &config(strategy, target, 4, p.degree() + 2)).unwrap();
        assert!(verify_tree(&t).unwrap());
        if t.is_certified() {
            certified += 1;
            assert_sound(&t, &p);
        }
        // Every internal node's children add up to it.
        let mut stack = vec![&t.root];
        while let Some(node) = stack.pop() {
            if !node.children.is_empty() {
                let vol = node.children.iter().map(|c| c.simplex().volume()).fold(int(0), |a, b| a + b);
                assert_eq!(vol, node.simplex().volume());
            }
            for child in &node.children {
                assert_eq!(child.form.to_polynomial(), p);
                stack.push(child);
            }
        }
    }
    assert!(certified > 0);
}

#[test]
fn deterministic_and_json_round_trip() {
    let p = quadratic_example();
    let cfg = config(Strategy::WitnessGuidedSplit, Target::Nonnegative, 3, 2);
    let a = certify(&p, &Simplex::standard(2), &cfg).unwrap();
    let b = certify(&p, &Simplex::standard(2), &cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_json(), b.to_json());
    let back = CertificateTree::from_json(&a.to_json()).unwrap();
    assert_eq!(back, a);
    assert!(verify_tree(&back).unwrap());

    let tampered = a.to_json().replacen("\"1/4\"", "\"1/3\"", 1);
    let t = CertificateTree::from_json(&tampered).unwrap();
    assert!(!verify_tree(&t).unwrap());
}

#[test]
fn leaves_match_direct_restriction_of_root() {
    let p = counterexample_polynomial();
    let t = certify(
        &p,
        &Simplex::standard(2),
        &config(Strategy::EdgeBisection, Target::Nonnegative, 3, 4),
    )
    .unwrap();
    let root = to_bernstein(&p, &Simplex::standard(2).barycentric_system(), 4).unwrap();
    for (_, leaf) in t.root.leaves() {
        assert_eq!(restrict_general(&root, leaf.simplex()).unwrap(), leaf.form);
    }
}

#[test]
fn enclosure_monotonicity_report() {
    // Measured, not asserted.
    let mut r = rng(42);
    let mut total = 0;
    let mut violations = 0;
    for _ in 0..6 {
        let s = simplex(&mut r, 2);
        let p = polynomial(&mut r, 2, 3, 4);
        let t = certify(&p, &s, &config(Strategy::EdgeBisection, Target::Positive, 3, 3)).unwrap();
        total += t.root.node_count() - 1;
        violations += t.enclosure_violations().len();
    }
    println!("enclosure monotonicity: {violations} of {total} child nodes widened the parent range");
}
