use dgla::artin::*;
use dgla::dgla::fixtures::{abel1, all_fixture_names, cplx2, fixture, qobs};
use dgla::linalg::scalar::{int, ratio};
use dgla::linalg::subspace::unit;
use dgla::linalg::{Matrix, Scalar, Subspace};
use dgla::mc::json::{element_from_json, element_to_json};
use dgla::mc::*;
use dgla::rng::Lcg;

fn ring(s: &str) -> ArtinAlgebra {
    parse_ring(s).unwrap()
}

fn top_of(s: &str) -> SmallExtension {
    small_extension_tower(&ring(s)).unwrap().remove(0)
}

#[test]
fn residual_examples() {
    let t = TensorDgla::new(&abel1(), &ring("eps")).unwrap();
    let x = t.from_terms(1, &[("u", "ε", int(1))]).unwrap();
    assert!(mc_residual(&t, &x).unwrap().is_zero());
    assert!(mc_check(&t, &x).unwrap());

    let t = TensorDgla::new(&qobs(), &ring("t^3")).unwrap();
    let x = t.from_terms(1, &[("e", "t", int(1))]).unwrap();
    let want = t.from_terms(2, &[("f", "t^2", ratio(1, 2))]).unwrap();
    assert_eq!(mc_residual(&t, &x).unwrap(), want);
    assert!(!mc_check(&t, &x).unwrap());

    let t = TensorDgla::new(&cplx2(), &ring("eps")).unwrap();
    let x = t
        .from_terms(1, &[("e12", "ε", int(1)), ("e21", "ε", int(1))])
        .unwrap();
    assert!(mc_check(&t, &x).unwrap());
    // (J + H)² = -I fails for H = I
    let y = t
        .from_terms(1, &[("e11", "ε", int(1)), ("e22", "ε", int(1))])
        .unwrap();
    assert!(!mc_check(&t, &y).unwrap());
}

#[test]
fn residual_rejects_wrong_degree() {
    let t = TensorDgla::new(&qobs(), &ring("eps")).unwrap();
    assert!(mc_residual(&t, &t.zero(2)).is_err());
}

#[test]
fn tangent_spaces() {
    assert_eq!(mc_tangent(&abel1()).unwrap().dim(), 1);
    assert_eq!(mc_tangent(&qobs()).unwrap().dim(), 1);
    let z = mc_tangent(&cplx2()).unwrap();
    assert_eq!(z.dim(), 2);
    assert!(z.contains(&[int(1), int(0), int(0), int(-1)]));
    assert!(z.contains(&[int(0), int(1), int(1), int(0)]));
}

#[test]
fn qobs_obstruction_is_half_a_squared() {
    let e = top_of("t^3");
    let p = LiftingProblem::new(&qobs(), &e).unwrap();
    for a in -3..=3 {
        let x = p.over_a.from_terms(1, &[("e", "t", int(a))]).unwrap();
        let o = p.obstruction(&x).unwrap();
        assert_eq!(o.coords, vec![vec![ratio(a * a, 2)]]);
        let lift = p.lift(&x).unwrap();
        let brute = p.brute_force_lift(&x).unwrap();
        assert_eq!(lift.is_some(), a == 0);
        assert_eq!(brute.is_some(), a == 0);
    }
}

#[test]
fn qobs_zero_lifts_to_second_order_term() {
    let e = top_of("t^3");
    let p = LiftingProblem::new(&qobs(), &e).unwrap();
    for b in -3..=3 {
        let y = p.over_b.from_terms(1, &[("e", "t^2", int(b))]).unwrap();
        assert!(mc_check(&p.over_b, &y).unwrap());
        assert!(p.project(&y).unwrap().is_zero());
    }
}

#[test]
fn cplx2_lift_solves_for_minus_nilpotent() {
    let e = top_of("t^3");
    let p = LiftingProblem::new(&cplx2(), &e).unwrap();
    let x = p
        .over_a
        .from_terms(1, &[("e12", "t", int(1)), ("e21", "t", int(1))])
        .unwrap();
    assert!(mc_check(&p.over_a, &x).unwrap());
    let o = p.obstruction(&x).unwrap();
    assert!(o.coords.is_empty());
    let y = p.lift(&x).unwrap().unwrap();
    assert!(mc_check(&p.over_b, &y).unwrap());
    let l = cplx2();
    let a = [int(0), int(1), int(0), int(0)];
    let ja = l.d(1, &a).unwrap();
    assert_eq!(ja, vec![int(1), int(0), int(0), int(1)]);
    let neg_a = p
        .over_b
        .from_terms(
            1,
            &[
                ("e12", "t", int(1)),
                ("e21", "t", int(1)),
                ("e12", "t^2", int(-1)),
            ],
        )
        .unwrap();
    assert!(mc_check(&p.over_b, &neg_a).unwrap());
}

#[test]
fn abelian_obstructions_vanish() {
    let mut rng = Lcg::new(7);
    for s in ["t^3", "x^2,xy,y^2", "t^4"] {
        for e in small_extension_tower(&ring(s)).unwrap() {
            let p = LiftingProblem::new(&abel1(), &e).unwrap();
            let x = sample_element(&p.over_a, 1, &mut rng);
            assert!(p.obstruction(&x).unwrap().is_zero());
        }
    }
}

#[test]
fn obstruction_requires_mc() {
    let p = LiftingProblem::new(&qobs(), &top_of("t^4")).unwrap();
    let x = p.over_a.from_terms(1, &[("e", "t", int(1))]).unwrap();
    assert!(matches!(
        p.obstruction(&x),
        Err(dgla::Error::NotMaurerCartan(_))
    ));
}

#[test]
fn primary_obstruction_matches_lifting() {
    let e = top_of("t^3");
    for name in all_fixture_names() {
        let l = fixture(&name).unwrap();
        let p = LiftingProblem::new(&l, &e).unwrap();
        let z1 = mc_tangent(&l).unwrap();
        for xi in z1.basis() {
            let o2 = primary_obstruction(&l, xi).unwrap();
            let x = p.over_a.pure(1, xi, &[int(1)]).unwrap();
            let o = p.obstruction(&x).unwrap();
            let col: Vec<Scalar> = o.coords.iter().map(|r| r[0].clone()).collect();
            assert_eq!(col, o2, "{name}");
        }
    }
    assert_eq!(
        primary_obstruction(&qobs(), &[int(1)]).unwrap(),
        vec![ratio(1, 2)]
    );
}

#[test]
fn completeness_against_brute_force() {
    let mut rng = Lcg::new(3);
    for name in ["QOBS", "CPLX2", "D2", "HW2"] {
        let l = fixture(name).unwrap();
        for s in ["t^3", "x^2,xy,y^2"] {
            for e in small_extension_tower(&ring(s)).unwrap() {
                let p = LiftingProblem::new(&l, &e).unwrap();
                for _ in 0..5 {
                    let x = sample_mc(&l, &e.quotient, &mut rng).unwrap();
                    let o = p.obstruction(&x).unwrap();
                    assert_eq!(
                        o.is_zero(),
                        p.brute_force_lift(&x).unwrap().is_some(),
                        "{name} {s}"
                    );
                    assert_eq!(o.is_zero(), p.lift(&x).unwrap().is_some());
                }
            }
        }
    }
}

#[test]
fn base_change_factor_two() {
    let t3 = ring("t^3");
    let e1 = small_extension_tower(&t3).unwrap().remove(0);
    let b2 = ring("x^2,y^2");
    let e2 = SmallExtension::quotient_by(&b2, &Subspace::span(3, [unit(3, 2)]).unwrap()).unwrap();
    let alpha = AlgebraMorphism::new(t3, b2, Matrix::from_i64(3, 2, &[1, 0, 1, 0, 0, 2])).unwrap();
    let mor = ExtensionMorphism::new(&e1, &e2, alpha).unwrap();
    let l = qobs();
    let p1 = LiftingProblem::new(&l, &e1).unwrap();
    let x = p1.over_a.from_terms(1, &[("e", "t", int(1))]).unwrap();
    assert!(base_change_holds(&l, &mor, &x).unwrap());
    // over (xy): ξ⊗x + η⊗y has obstruction [ξ,η], symmetric in the pair
    let p2 = LiftingProblem::new(&l, &e2).unwrap();
    let pair = p2
        .over_a
        .from_terms(1, &[("e", "x", int(2)), ("e", "y", int(3))])
        .unwrap();
    assert_eq!(p2.obstruction(&pair).unwrap().coords, vec![vec![int(6)]]);
    let o1 = p1.obstruction(&x).unwrap();
    assert_eq!(o1.transform(&mor.on_ideal).unwrap(), vec![vec![int(1)]]);
    for name in ["CPLX2", "HW2", "ABEL1"] {
        let l = fixture(name).unwrap();
        let p = LiftingProblem::new(&l, &e1).unwrap();
        let mut rng = Lcg::new(11);
        for _ in 0..5 {
            let x = sample_mc(&l, &p.ext.quotient, &mut rng).unwrap();
            assert!(base_change_holds(&l, &mor, &x).unwrap(), "{name}");
        }
    }
}

#[test]
fn smoothness_reports() {
    let r = smoothness_diagnostics(&abel1()).unwrap();
    assert_eq!(
        r,
        SmoothnessReport {
            bracket_z1_in_b2: true,
            bracket_z1_zero: true,
            h2_zero: true
        }
    );
    let r = smoothness_diagnostics(&qobs()).unwrap();
    assert_eq!(
        r,
        SmoothnessReport {
            bracket_z1_in_b2: false,
            bracket_z1_zero: false,
            h2_zero: false
        }
    );
    let r = smoothness_diagnostics(&cplx2()).unwrap();
    assert!(r.h2_zero && r.bracket_z1_in_b2 && !r.bracket_z1_zero);
}

#[test]
fn element_json_round_trip() {
    let t = TensorDgla::new(&cplx2(), &ring("t^3")).unwrap();
    let mut rng = Lcg::new(5);
    let x = sample_element(&t, 1, &mut rng);
    let back = element_from_json(&t, &element_to_json(&t, &x).to_string()).unwrap();
    assert_eq!(back, x);
    assert!(element_from_json(&t, r#"{"degree":1,"coeffs":[[1]]}"#).is_err());
}
