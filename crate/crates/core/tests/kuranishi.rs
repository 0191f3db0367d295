use dgla::artin::*;
use dgla::dgla::fixtures::{abel1, all_fixture_names, cplx2, d2, fixture, qobs};
use dgla::gauge::exp_action;
use dgla::kuranishi::*;
use dgla::linalg::scalar::{int, ratio};
use dgla::linalg::Matrix;
use dgla::mc::*;
use dgla::rng::Lcg;

fn ring(s: &str) -> ArtinAlgebra {
    parse_ring(s).unwrap()
}

#[test]
fn split_identities_hold_for_every_fixture() {
    for name in all_fixture_names() {
        let s = HodgeSplit::new(&fixture(&name).unwrap()).unwrap();
        let ids = s.identities().unwrap();
        assert!(!ids.is_empty(), "{name}");
        assert!(ids.iter().all(|(_, ok)| *ok), "{name}: {ids:?}");
    }
}

#[test]
fn split_examples() {
    let s = HodgeSplit::new(&qobs()).unwrap();
    assert!(s.delta(2).unwrap().is_zero());
    assert_eq!(s.degree(1).unwrap().h.dim(), 1);
    let s = HodgeSplit::new(&d2()).unwrap();
    assert_eq!(s.delta(1).unwrap(), &Matrix::from_i64(1, 1, &[1]));
    assert_eq!(s.degree(1).unwrap().h.dim(), 0);
    let s = HodgeSplit::new(&cplx2()).unwrap();
    let c2 = s.degree(2).unwrap();
    assert_eq!((c2.b.dim(), c2.h.dim()), (2, 0));
    // δ(I) solves JA + AJ = I
    let di = s.apply_delta(2, &[int(1), int(0), int(0), int(1)]).unwrap();
    let l = cplx2();
    assert_eq!(l.d(1, &di).unwrap(), vec![int(1), int(0), int(0), int(1)]);
}

#[test]
fn kuranishi_map_examples() {
    let k = Kuranishi::new(&qobs(), &ring("t^3")).unwrap();
    let x = k.t.from_terms(1, &[("e", "t", int(2))]).unwrap();
    assert_eq!(k.f(&x).unwrap(), x);
    let k = Kuranishi::new(&cplx2(), &ring("eps")).unwrap();
    let x =
        k.t.from_terms(1, &[("e12", "ε", int(1)), ("e21", "ε", int(3))])
            .unwrap();
    assert_eq!(k.f(&x).unwrap(), x);
    let k = Kuranishi::new(&cplx2(), &ring("t^3")).unwrap();
    let x =
        k.t.from_terms(1, &[("e12", "t", int(1)), ("e21", "t", int(1))])
            .unwrap();
    let di = k
        .split
        .apply_delta(2, &[int(1), int(0), int(0), int(1)])
        .unwrap();
    let want = x.add(&k.t.pure(1, &di, &[int(0), int(1)]).unwrap());
    let fx = k.f(&x).unwrap();
    assert_eq!(fx, want);
    assert_eq!(k.f_inverse(&fx).unwrap(), x);
}

#[test]
fn membership_examples() {
    let k = Kuranishi::new(&qobs(), &ring("t^3")).unwrap();
    for a in -2..=2 {
        for b in -2..=2 {
            let x =
                k.t.from_terms(1, &[("e", "t", int(a)), ("e", "t^2", int(b))])
                    .unwrap();
            assert_eq!(k.kur_membership(&x).unwrap(), a == 0);
        }
    }
    let k = Kuranishi::new(&qobs(), &ring("eps")).unwrap();
    let x = k.t.from_terms(1, &[("e", "ε", int(3))]).unwrap();
    assert!(k.kur_membership(&x).unwrap());
    let k = Kuranishi::new(&cplx2(), &ring("t^3")).unwrap();
    let h1 = k.split.degree(1).unwrap().h.clone();
    let x = k.t.pure(1, &h1.basis()[0], &[int(1), int(2)]).unwrap();
    assert!(k.kur_membership(&x).unwrap());
    let off =
        k.t.from_terms(1, &[("e11", "t", int(1)), ("e22", "t", int(1))])
            .unwrap();
    assert!(k.kur_membership(&off).is_err());
}

#[test]
fn round_trips_and_proof_equalities() {
    let mut rng = Lcg::new(1);
    for name in all_fixture_names() {
        let l = fixture(&name).unwrap();
        for s in ["eps", "t^3", "x^2,xy,y^2"] {
            let a = ring(s);
            let k = Kuranishi::new(&l, &a).unwrap();
            for _ in 0..5 {
                let x = sample_element(&k.t, 1, &mut rng);
                assert_eq!(k.f_inverse(&k.f(&x).unwrap()).unwrap(), x, "{name} {s}");
                let m = sample_mc(&l, &a, &mut rng).unwrap();
                let (g, xn) = k.gauge_normalize(&m).unwrap();
                assert_eq!(exp_action(&k.t, &g, &m).unwrap(), xn);
                let y = k.mc_to_kur(&xn).unwrap();
                assert_eq!(k.delta(&y).unwrap(), k.delta(&xn).unwrap());
                assert!(k.t.d(&y).unwrap().is_zero());
                assert_eq!(k.kur_to_mc(&y).unwrap(), xn);
            }
        }
    }
}

#[test]
fn normalization_examples() {
    let k = Kuranishi::new(&d2(), &ring("eps")).unwrap();
    let x = k.t.from_terms(1, &[("u", "ε", int(1))]).unwrap();
    let (g, xn) = k.gauge_normalize(&x).unwrap();
    assert!(xn.is_zero());
    assert_eq!(g, k.t.from_terms(0, &[("c", "ε", int(1))]).unwrap());
    let k = Kuranishi::new(&cplx2(), &ring("t^3")).unwrap();
    let mut rng = Lcg::new(3);
    let m = sample_mc(&cplx2(), &ring("t^3"), &mut rng).unwrap();
    let (g, xn) = k.gauge_normalize(&m).unwrap();
    assert!(g.coeffs.is_empty());
    assert_eq!(xn, m);
}

#[test]
fn normal_forms_are_gauge_invariant_without_h0() {
    let mut rng = Lcg::new(5);
    for name in ["D2", "CPLX2", "QOBS", "ABEL1", "D2_d", "QOBS_d"] {
        let l = fixture(name).unwrap();
        if l.cohomology_degree(0).unwrap().dim_h() != 0 {
            continue;
        }
        for s in ["t^3", "x^2,xy,y^2", "t^4"] {
            let a = ring(s);
            let k = Kuranishi::new(&l, &a).unwrap();
            for _ in 0..5 {
                let x = sample_mc(&l, &a, &mut rng).unwrap();
                let g = sample_element(&k.t, 0, &mut rng);
                let y = exp_action(&k.t, &g, &x).unwrap();
                assert_eq!(
                    k.gauge_normalize(&x).unwrap().1,
                    k.gauge_normalize(&y).unwrap().1,
                    "{name} {s}"
                );
            }
        }
    }
}

#[test]
fn fixed_point_relation_forces_zero() {
    let mut rng = Lcg::new(8);
    for name in ["CPLX2", "HW2", "D2"] {
        let l = fixture(name).unwrap();
        for s in ["t^3", "t^4", "x^2,xy,y^2"] {
            let a = ring(s);
            let k = Kuranishi::new(&l, &a).unwrap();
            for _ in 0..5 {
                let x = sample_element(&k.t, 1, &mut rng);
                let c = ratio(rng.coeff_i64(), 2);
                // iterate y ↦ c·δ[y,x] from a random start until it is stable
                let mut y = sample_element(&k.t, 1, &mut rng);
                for _ in 0..a.nilpotency_index() {
                    y = k.delta(&k.t.bracket(&y, &x).unwrap()).unwrap().scale(&c);
                }
                let levels = k.fixed_point_levels(&x, &y, &c).unwrap();
                assert_eq!(levels, a.nilpotency_index());
                assert!(y.is_zero());
            }
        }
    }
}

#[test]
fn polynomial_presentation() {
    for order in 2..=6 {
        let q = kuranishi_polynomials(&qobs(), order).unwrap();
        assert_eq!(q.polys.len(), 1);
        assert_eq!(q.polys[0].len(), 1);
        assert_eq!(q.polys[0][&vec![2u32]], int(1));
    }
    assert_eq!(
        kuranishi_polynomials(&qobs(), 4)
            .unwrap()
            .to_json()
            .to_string(),
        r#"{"q1":{"[2]":1}}"#
    );
    assert!(kuranishi_polynomials(&abel1(), 4)
        .unwrap()
        .polys
        .iter()
        .all(|p| p.is_empty()));
    assert!(kuranishi_polynomials(&cplx2(), 4).unwrap().polys.is_empty());
}

#[test]
fn polynomial_membership_agrees_with_kuranishi_functor() {
    let q = kuranishi_polynomials(&qobs(), 4).unwrap();
    for s in ["eps", "t^3", "t^4"] {
        let a = ring(s);
        let k = Kuranishi::new(&qobs(), &a).unwrap();
        let n = a.dim_m();
        let mut rng = Lcg::new(2);
        for _ in 0..50 {
            let coeffs = rng.vector(n);
            let x = k.t.element(1, coeffs.clone()).unwrap();
            let vanishes = q
                .evaluate(&a, &[coeffs])
                .unwrap()
                .iter()
                .all(|v| v.iter().all(|c| *c == int(0)));
            assert_eq!(vanishes, k.kur_membership(&x).unwrap(), "{s}");
        }
    }
}
