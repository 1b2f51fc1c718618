use super::*;
use crate::fsquad::Integrand;
use crate::polyring::parse_tuple;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn point(s: &str, m: usize) -> ProjPoint {
    ProjPoint::new(parse_tuple(s, Some(m)).unwrap()).unwrap()
}

fn exact(prob: &IntersectionProblem) -> LogLinear {
    let f = Engine::default().form(prob).unwrap();
    assert!(f.is_exact(), "expected an exact value, got {f}");
    f.exact_part().clone()
}

#[test]
fn fs_self_intersection() {
    let p = IntersectionProblem::full(1, vec![MetrizedBundle::fs(1, 0), MetrizedBundle::fs(1, 0)]);
    assert_eq!(exact(&p), LogLinear::from_ratio(1, 2));
}

#[test]
fn constant_twist() {
    let c = LogLinear::log(&BigInt::from(3)) + LogLinear::from_ratio(1, 5);
    let p = IntersectionProblem::full(
        1,
        vec![MetrizedBundle::constant(1, c.clone()), MetrizedBundle::fs(1, 0)],
    );
    assert_eq!(exact(&p), c);
    let lam = MetrizedBundle::twist(1, &q(1, 1)).unwrap();
    let p = IntersectionProblem::full(1, vec![lam, MetrizedBundle::fs(1, 0)]);
    assert!(exact(&p).is_zero());
}

#[test]
fn section_against_other_factor() {
    let p = IntersectionProblem::full(
        2,
        vec![
            MetrizedBundle::pullback(&point("(1, z2)", 2)),
            MetrizedBundle::fs(2, 0),
            MetrizedBundle::fs(2, 0),
        ],
    );
    assert_eq!(exact(&p), LogLinear::from_ratio(1, 2));
}

#[test]
fn claim_pattern_vanishes() {
    let p = IntersectionProblem::full(
        4,
        vec![
            MetrizedBundle::pullback(&point("(z1*z3 + 1, z2 - z4^2, 3)", 4)),
            MetrizedBundle::fs(4, 0),
            MetrizedBundle::fs(4, 0),
            MetrizedBundle::fs(4, 1),
            MetrizedBundle::fs(4, 1),
        ],
    );
    assert!(exact(&p).is_zero());
}

#[test]
fn diagonal_convention() {
    let p = IntersectionProblem::full(
        1,
        vec![MetrizedBundle::pullback(&point("(1, z1)", 1)), MetrizedBundle::fs(1, 0)],
    );
    assert_eq!(exact(&p), LogLinear::from_ratio(1, 2));
}

#[test]
fn constant_point_height() {
    let p = IntersectionProblem::full(
        1,
        vec![MetrizedBundle::pullback(&point("(1, 2)", 1)), MetrizedBundle::fs(1, 0)],
    );
    assert_eq!(exact(&p), LogLinear::log_scaled(&BigInt::from(5), q(1, 2)));
}

#[test]
fn one_variable_height_is_mahler_measure() {
    let pt = point("(z1^2 - 3, 2*z1 + 1)", 1);
    let f = Engine::default()
        .form(&IntersectionProblem::full(
            1,
            vec![MetrizedBundle::pullback(&pt), MetrizedBundle::fs(1, 0)],
        ))
        .unwrap();
    let expected = LinearForm::integral(
        Integrand::LogSumSq {
            polys: {
                let mut v: Vec<MultiPoly> = pt.coords().to_vec();
                v.sort();
                v
            },
        },
        q(1, 2),
    );
    assert_eq!(f, expected, "{f}");
}

#[test]
fn fixed_point_base() {
    // FS restricted to the rational point (1 : 2) of the base
    let p = IntersectionProblem {
        m: 1,
        classes: vec![MetrizedBundle::fs(1, 0)],
        base: vec![BaseFactor::Point {
            x0: 1.into(),
            x1: 2.into(),
        }],
        fiber: None,
    };
    assert_eq!(exact(&p), LogLinear::log_scaled(&BigInt::from(5), q(1, 2)));
    let v = IntersectionProblem {
        m: 1,
        classes: vec![MetrizedBundle::fs(1, 0)],
        base: vec![BaseFactor::Free],
        fiber: Some(7.into()),
    };
    assert_eq!(exact(&v), LogLinear::log(&BigInt::from(7)));
}

#[test]
fn multilinearity_in_a_slot() {
    let pt = point("(z1 + 2, z1*z2 - 1)", 2);
    let two = MetrizedBundle::fs_multi(vec![q(2, 1), q(0, 1)]);
    let e = Engine::default();
    let a = e
        .form(&IntersectionProblem::full(
            2,
            vec![MetrizedBundle::pullback(&pt), two, MetrizedBundle::fs(2, 1)],
        ))
        .unwrap();
    let b = e
        .form(&IntersectionProblem::full(
            2,
            vec![
                MetrizedBundle::pullback(&pt),
                MetrizedBundle::fs(2, 0),
                MetrizedBundle::fs(2, 1),
            ],
        ))
        .unwrap();
    assert_eq!(a, b.scale(&q(2, 1)));
}

#[test]
fn peel_order_and_permutation_symmetry() {
    let pt = point("(z1 + 2, z1*z2 - 1, 3*z2)", 2);
    let classes = vec![
        MetrizedBundle::pullback(&pt),
        MetrizedBundle::fs(2, 0),
        MetrizedBundle::fs(2, 1),
    ];
    let tol = 1e-5;
    let a = intersection_degree(&IntersectionProblem::full(2, classes.clone()), tol).unwrap();
    let swapped = Engine::default().with_config(EngineConfig {
        peel_order: Some(vec![1, 0]),
        no_memo: false,
    });
    let mut rev = classes.clone();
    rev.reverse();
    let b = swapped
        .intersection_degree(&IntersectionProblem::full(2, rev), tol)
        .unwrap();
    assert!((a.numeric - b.numeric).abs() <= 2.0 * tol, "{a} vs {b}");
    assert!(a.numeric >= -a.error_bound);
}

#[test]
fn factor_relabeling() {
    let e = Engine::default();
    let p = point("(z1^2 + z2, 2)", 2);
    let r = point("(z2^2 + z1, 2)", 2);
    let a = e
        .intersection_degree(
            &IntersectionProblem::full(
                2,
                vec![MetrizedBundle::pullback(&p), MetrizedBundle::fs(2, 0), MetrizedBundle::fs(2, 1)],
            ),
            1e-5,
        )
        .unwrap();
    let b = e
        .intersection_degree(
            &IntersectionProblem::full(
                2,
                vec![MetrizedBundle::pullback(&r), MetrizedBundle::fs(2, 1), MetrizedBundle::fs(2, 0)],
            ),
            1e-5,
        )
        .unwrap();
    assert!((a.numeric - b.numeric).abs() <= 2e-5, "{a} vs {b}");
}

#[test]
fn restriction_examples() {
    let prob = |s: &str, m: usize| {
        let mut classes = vec![MetrizedBundle::pullback(&point(s, m))];
        classes.extend((0..m).map(|i| MetrizedBundle::fs(m, i)));
        IntersectionProblem::full(m, classes)
    };
    let r = restrict_to_infinity(&prob("(1, z1)", 1), 0).unwrap();
    assert!(r.corrections.is_empty());
    let s = r.problem.classes[0].section_part.as_ref().unwrap();
    assert_eq!(s.coords, parse_tuple("(0, 1)", Some(1)).unwrap());

    let r = restrict_to_infinity(&prob("(2*z1 + 1, 4*z1)", 1), 0).unwrap();
    assert_eq!(r.corrections.len(), 1);
    assert!(matches!(&r.corrections[0], Correction::Vertical { prime, multiplicity: 1, .. } if *prime == BigInt::from(2)));
    let e = Engine::default();
    let v = r.form(&e).unwrap();
    assert_eq!(
        v.exact_part(),
        &(LogLinear::log(&BigInt::from(2)) + LogLinear::log_scaled(&BigInt::from(5), q(1, 2)))
    );

    let r = restrict_to_infinity(&prob("(1, z1*z2)", 2), 0).unwrap();
    assert!(matches!(&r.corrections[0], Correction::Horizontal { gcd, .. } if gcd.to_string() == "z2"));
}

#[test]
fn restriction_matches_direct_collapse() {
    let e = Engine::default();
    for s in ["(2*z1 + 1, 4*z1)", "(z1*z2 + 3, 6*z1*z2^2 + z2)", "(z1^2 - z2, 10*z1^2*z2)"] {
        let m = 2;
        let mut classes = vec![MetrizedBundle::pullback(&point(s, m))];
        classes.extend((0..m).map(|i| MetrizedBundle::fs(m, i)));
        let prob = IntersectionProblem::full(m, classes.clone());
        let r = restrict_to_infinity(&prob, 0).unwrap();
        let mut direct = prob.clone();
        direct.classes.remove(1);
        direct.base[0] = BaseFactor::infinity();
        assert_eq!(r.form(&e).unwrap(), e.form(&direct).unwrap(), "{s}");
    }
}

#[test]
fn two_sections_rejected() {
    let p = point("(1, z1)", 1);
    let prob = IntersectionProblem::full(
        1,
        vec![MetrizedBundle::pullback(&p), MetrizedBundle::pullback(&p)],
    );
    assert!(matches!(intersection_degree(&prob, 1e-6), Err(Error::UnsupportedShape(_))));
}

#[test]
fn explain_trace() {
    let p = IntersectionProblem::full(
        1,
        vec![MetrizedBundle::pullback(&point("(1, z1)", 1)), MetrizedBundle::fs(1, 0)],
    );
    let (f, t) = Engine::default().explain(&p).unwrap();
    assert_eq!(f.exact_part(), &LogLinear::from_ratio(1, 2));
    assert_eq!(t.value, "1/2");
    assert!(!t.children.is_empty());
}

#[test]
fn two_variable_height_is_mahler_measure() {
    for s in ["(z1*z2 + 1, z2 - 3)", "(2*z1^2 - z2, z1*z2^2 + 5, z1)", "(z1 - z2, z1*z2 + 1)"] {
        let pt = point(s, 2);
        let f = Engine::default()
            .form(&IntersectionProblem::full(
                2,
                vec![MetrizedBundle::pullback(&pt), MetrizedBundle::fs(2, 0), MetrizedBundle::fs(2, 1)],
            ))
            .unwrap();
        let mut polys: Vec<MultiPoly> = pt.coords().to_vec();
        polys.sort();
        assert_eq!(f, LinearForm::integral(Integrand::LogSumSq { polys }, q(1, 2)), "{s}: {f}");
    }
}
