use dgla::artin::*;
use dgla::dgla::fixtures::{all_fixture_names, cplx2, d2, fixture, hw2, qobs};
use dgla::gauge::*;
use dgla::linalg::scalar::{int, inv_factorial, ratio};
use dgla::linalg::{Matrix, Scalar};
use dgla::mc::*;
use dgla::rng::Lcg;

fn ring(s: &str) -> ArtinAlgebra {
    parse_ring(s).unwrap()
}

/// Strictly upper-triangular n×n matrices under the commutator.
struct UpperTri(usize);

impl NilpotentLie for UpperTri {
    type Elem = Matrix;
    fn zero(&self) -> Matrix {
        Matrix::zeros(self.0, self.0)
    }
    fn add(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a.add(b).unwrap()
    }
    fn scale(&self, c: &Scalar, a: &Matrix) -> Matrix {
        a.scale(c)
    }
    fn bracket(&self, a: &Matrix, b: &Matrix) -> dgla::Result<Matrix> {
        a.mul(b)?.sub(&b.mul(a)?)
    }
    fn is_zero(&self, a: &Matrix) -> bool {
        a.is_zero()
    }
    fn nilpotency(&self) -> usize {
        self.0
    }
}

fn mexp(a: &Matrix) -> Matrix {
    let n = a.rows();
    let mut out = Matrix::identity(n);
    let mut p = Matrix::identity(n);
    for k in 1..=n {
        p = p.mul(a).unwrap();
        out = out.add(&p.scale(&inv_factorial(k))).unwrap();
    }
    out
}

fn mlog_unipotent(u: &Matrix) -> Matrix {
    let n = u.rows();
    let x = u.sub(&Matrix::identity(n)).unwrap();
    let mut out = Matrix::zeros(n, n);
    let mut p = Matrix::identity(n);
    for k in 1..=n {
        p = p.mul(&x).unwrap();
        let c = if k % 2 == 1 {
            ratio(1, k as i64)
        } else {
            ratio(-1, k as i64)
        };
        out = out.add(&p.scale(&c)).unwrap();
    }
    out
}

fn random_upper(n: usize, rng: &mut Lcg) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            m.set(i, j, rng.coeff());
        }
    }
    m
}

#[test]
fn dynkin_series_matches_matrix_logarithm() {
    let mut rng = Lcg::new(1);
    for n in 2..=5 {
        let l = UpperTri(n);
        for _ in 0..10 {
            let (a, b) = (random_upper(n, &mut rng), random_upper(n, &mut rng));
            let want = mlog_unipotent(&mexp(&a).mul(&mexp(&b)).unwrap());
            assert_eq!(bch(&l, &a, &b).unwrap(), want, "n = {n}");
        }
    }
}

#[test]
fn bch_examples() {
    let t = TensorDgla::new(&hw2(), &ring("t^3")).unwrap();
    let mut rng = Lcg::new(4);
    for _ in 0..10 {
        let a = sample_element(&t, 0, &mut rng);
        let b = sample_element(&t, 0, &mut rng);
        let ab = t.bracket(&a, &b).unwrap();
        // over t³ every double bracket vanishes, so [a,b] is central
        let want = a.add(&b).add(&ab.scale(&ratio(1, 2)));
        assert_eq!(gauge_bch(&t, &a, &b).unwrap(), want);
        let inv = gauge_bch(&t, &a.neg(), &a).unwrap();
        assert!(inv.is_zero());
        assert_eq!(
            gauge_bch(&t, &a, &gauge_bch(&t, &a.neg(), &a).unwrap()).unwrap(),
            a
        );
    }
    let t = TensorDgla::new(&d2(), &ring("t^4")).unwrap();
    let a = t.from_terms(0, &[("c", "t", int(2))]).unwrap();
    let b = t.from_terms(0, &[("c", "t^2", int(-1))]).unwrap();
    assert_eq!(gauge_bch(&t, &a, &b).unwrap(), a.add(&b));
}

#[test]
fn action_examples() {
    let t = TensorDgla::new(&d2(), &ring("eps")).unwrap();
    let a = t.from_terms(0, &[("c", "ε", int(1))]).unwrap();
    let x = t.zero(1);
    let y = exp_action(&t, &a, &x).unwrap();
    assert_eq!(y, t.from_terms(1, &[("u", "ε", int(-1))]).unwrap());
    assert_eq!(exp_action(&t, &t.zero(0), &y).unwrap(), y);
    let t = TensorDgla::new(&cplx2(), &ring("t^3")).unwrap();
    assert_eq!(t.dim(0), 0);
    let mut rng = Lcg::new(2);
    let x = sample_mc(&cplx2(), &ring("t^3"), &mut rng).unwrap();
    assert_eq!(exp_action(&t, &t.zero(0), &x).unwrap(), x);
}

#[test]
fn pga_agrees_with_exponential_action() {
    let l = d2();
    let env = d2_envelope(&l).unwrap();
    for s in ["t^3", "eps", "t^4", "x^2,xy,y^2"] {
        let mut rng = Lcg::new(9);
        let r = env.agreement(&ring(s), &mut rng, 20).unwrap();
        assert!(r.passed(), "{s}: {r:?}");
    }
    let h = PgaEmbedding::trivial(&hw2());
    let mut rng = Lcg::new(9);
    assert!(h.agreement(&ring("eps"), &mut rng, 20).unwrap().passed());
    let mut rng = Lcg::new(9);
    assert!(matches!(
        h.agreement(&ring("t^3"), &mut rng, 20),
        Err(dgla::Error::NoEnvelope(_))
    ));
}

#[test]
fn stability_and_action_laws() {
    let mut rng = Lcg::new(1);
    for name in all_fixture_names() {
        let l = fixture(&name).unwrap();
        for s in ["eps", "t^3", "x^2,xy,y^2"] {
            let a_ring = ring(s);
            let t = TensorDgla::new(&l, &a_ring).unwrap();
            for _ in 0..5 {
                let x = sample_mc(&l, &a_ring, &mut rng).unwrap();
                assert!(mc_check(&t, &x).unwrap());
                let a = sample_element(&t, 0, &mut rng);
                let b = sample_element(&t, 0, &mut rng);
                let ax = exp_action(&t, &a, &x).unwrap();
                assert!(mc_check(&t, &ax).unwrap(), "{name} {s}");
                let lhs = exp_action(&t, &a, &exp_action(&t, &b, &x).unwrap()).unwrap();
                let rhs = exp_action(&t, &gauge_bch(&t, &a, &b).unwrap(), &x).unwrap();
                assert_eq!(lhs, rhs, "{name} {s}");
            }
        }
    }
    let _ = qobs();
}

#[test]
fn tangent_examples_and_translation() {
    assert_eq!(def_tangent(&d2()).unwrap().dim_h(), 0);
    assert_eq!(def_tangent(&qobs()).unwrap().dim_h(), 1);
    assert_eq!(def_tangent(&cplx2()).unwrap().dim_h(), 2);
    for name in all_fixture_names() {
        let l = fixture(&name).unwrap();
        let h1 = def_tangent(&l).unwrap();
        assert!(tangent_gauge_image(&l).unwrap().same_as(&h1.b), "{name}");
        // over ε the action is translation by −db
        let t = TensorDgla::new(&l, &ring("eps")).unwrap();
        let mut rng = Lcg::new(4);
        for _ in 0..5 {
            let b = sample_element(&t, 0, &mut rng);
            let x = t
                .element(
                    1,
                    h1.z.basis().iter().fold(vec![int(0); l.dim(1)], |acc, z| {
                        dgla::linalg::vector::add(
                            &acc,
                            &dgla::linalg::vector::scale(&rng.coeff(), z),
                        )
                    }),
                )
                .unwrap();
            assert_eq!(exp_action(&t, &b, &x).unwrap(), x.sub(&t.d(&b).unwrap()));
        }
    }
}

#[test]
fn iso_obstruction_examples() {
    let step = |s: &str| small_extension_tower(&ring(s)).unwrap()[0].clone();
    let e = step("t^3");
    let l = d2();
    let p = LiftingProblem::new(&l, &e).unwrap();
    let (z0, z1) = (p.over_a.zero(0), p.over_a.zero(1));
    let o = iso_obstruction(&l, &e, &z0, &z1, &z1, &p.over_b.zero(1), &p.over_b.zero(1)).unwrap();
    assert!(o.is_zero());
    assert!(o.coords.is_empty());

    let l = qobs();
    let p = LiftingProblem::new(&l, &e).unwrap();
    let x = p.over_a.from_terms(1, &[("e", "t", int(0))]).unwrap();
    let xl = p.section_lift(&x).unwrap();
    let o = iso_obstruction(&l, &e, &p.over_a.zero(0), &x, &x, &xl, &xl).unwrap();
    assert!(o.is_zero());

    // a lift of y which differs from the transported lift by a cocycle
    let x = p.over_a.zero(1);
    let xl = p.over_b.zero(1);
    let bumped = xl.add(&p.from_ideal_components(1, &[vec![int(5)]]).unwrap());
    let o = iso_obstruction(&l, &e, &p.over_a.zero(0), &x, &x, &xl, &bumped).unwrap();
    assert_eq!(o.coords, vec![vec![int(-5)]]);
}

#[test]
fn iso_obstruction_on_hochschild_samples() {
    let l = hw2();
    let mut rng = Lcg::new(11);
    for s in ["t^3", "x^2,xy,y^2", "t^4"] {
        let b = ring(s);
        let e = small_extension_tower(&b).unwrap()[0].clone();
        let p = LiftingProblem::new(&l, &e).unwrap();
        for _ in 0..4 {
            let xl = sample_mc(&l, &b, &mut rng).unwrap();
            let gl = sample_element(&p.over_b, 0, &mut rng);
            let yl = exp_action(&p.over_b, &gl, &xl).unwrap();
            let (x, y, g) = (
                p.project(&xl).unwrap(),
                p.project(&yl).unwrap(),
                p.project(&gl).unwrap(),
            );
            let o = iso_obstruction(&l, &e, &g, &x, &y, &xl, &yl).unwrap();
            assert!(o.is_zero(), "{s}");
        }
    }
}

#[test]
fn irrelevant_subalgebra_examples() {
    let poly = fixture("POLY").unwrap();
    for s in ["eps", "t^3"] {
        let t = TensorDgla::new(&poly, &ring(s)).unwrap();
        let k = irrelevant_subalgebra(&t, &t.zero(1)).unwrap();
        assert!(k.basis.is_empty());
        assert!(k.closed);
        let mut rng = Lcg::new(6);
        for _ in 0..5 {
            let a = sample_mc(&poly, &ring(s), &mut rng).unwrap();
            let k = irrelevant_subalgebra(&t, &a).unwrap();
            assert!(k.closed, "{s}");
        }
    }
    let t = TensorDgla::new(&cplx2(), &ring("t^3")).unwrap();
    assert!(irrelevant_subalgebra(&t, &t.zero(1))
        .unwrap()
        .basis
        .is_empty());
}

#[test]
fn equivalence_examples() {
    let l = d2();
    let t = TensorDgla::new(&l, &ring("eps")).unwrap();
    let x = t.from_terms(1, &[("u", "ε", int(1))]).unwrap();
    let dec = gauge_equivalent(&l, &ring("eps"), &x, &t.zero(1), DEFAULT_SEARCH_BUDGET).unwrap();
    assert!(dec.complete);
    assert_eq!(
        dec.verdict,
        Verdict::Equivalent {
            witness: t.from_terms(0, &[("c", "ε", int(1))]).unwrap()
        }
    );

    let l = qobs();
    let a = ring("t^3");
    let t = TensorDgla::new(&l, &a).unwrap();
    let x = t.from_terms(1, &[("e", "t^2", int(1))]).unwrap();
    let dec = gauge_equivalent(&l, &a, &x, &t.zero(1), DEFAULT_SEARCH_BUDGET).unwrap();
    assert!(dec.complete);
    match dec.verdict {
        Verdict::NotEquivalent { certificate } => {
            assert_eq!(certificate.step, 0);
            assert_eq!(certificate.coords, vec![vec![int(1)]]);
        }
        v => panic!("{v:?}"),
    }
    let dec = gauge_equivalent(&l, &a, &x, &x, DEFAULT_SEARCH_BUDGET).unwrap();
    assert_eq!(dec.verdict, Verdict::Equivalent { witness: t.zero(0) });
    let bad = t.from_terms(1, &[("e", "t", int(1))]).unwrap();
    assert!(gauge_equivalent(&l, &a, &bad, &x, 10).is_err());
}

#[test]
fn equivalence_decisions_are_sound() {
    let mut rng = Lcg::new(21);
    for name in all_fixture_names() {
        let l = fixture(&name).unwrap();
        for s in ["t^3", "x^2,xy,y^2"] {
            let a = ring(s);
            let t = TensorDgla::new(&l, &a).unwrap();
            for _ in 0..3 {
                let x = sample_mc(&l, &a, &mut rng).unwrap();
                let g = sample_element(&t, 0, &mut rng);
                let y = exp_action(&t, &g, &x).unwrap();
                let dec = gauge_equivalent(&l, &a, &x, &y, DEFAULT_SEARCH_BUDGET).unwrap();
                match &dec.verdict {
                    Verdict::Equivalent { witness } => {
                        assert_eq!(exp_action(&t, witness, &x).unwrap(), y)
                    }
                    Verdict::Unknown { .. } => assert!(!dec.complete, "{name} {s}"),
                    Verdict::NotEquivalent { .. } => {
                        panic!("{name} {s}: orbit reported inequivalent")
                    }
                }
                let z = sample_mc(&l, &a, &mut rng).unwrap();
                let dec = gauge_equivalent(&l, &a, &x, &z, DEFAULT_SEARCH_BUDGET).unwrap();
                match &dec.verdict {
                    Verdict::Equivalent { witness } => {
                        assert_eq!(exp_action(&t, witness, &x).unwrap(), z)
                    }
                    Verdict::NotEquivalent { .. } => assert!(dec.complete),
                    Verdict::Unknown { .. } => assert!(!dec.complete),
                }
            }
        }
    }
}

#[test]
fn morphism_reports() {
    use dgla::dgla::{truncate_positive, DglaMorphism};
    for name in all_fixture_names() {
        let l = fixture(&name).unwrap();
        let r = thm31_report(&DglaMorphism::identity(&l)).unwrap();
        assert_eq!(r.verdict, MorphismVerdict::Isomorphism, "{name}");
        let h1 = l.cohomology_degree(1).unwrap();
        let comp = h1.h.sum(&h1.c).unwrap();
        let f = truncate_positive(&l, &comp).unwrap();
        let r = thm31_report(&f).unwrap();
        assert_eq!(r.h1_bijective, Some(true), "{name}");
        assert_eq!(r.h2_injective, Some(true), "{name}");
        let h0 = l.cohomology_degree(0).unwrap().dim_h();
        let want = if h0 == 0 {
            MorphismVerdict::Isomorphism
        } else {
            MorphismVerdict::Etale
        };
        assert_eq!(r.verdict, want, "{name}");
    }
    let q = qobs();
    let r = thm31_report(&DglaMorphism::zero(&q, &q)).unwrap();
    assert_eq!(r.h1_bijective, Some(false));
    assert_eq!(r.verdict, MorphismVerdict::Inconclusive);
    let c = cplx2();
    let h1 = c.cohomology_degree(1).unwrap();
    let r = thm31_report(&truncate_positive(&c, &h1.h.sum(&h1.c).unwrap()).unwrap()).unwrap();
    assert_eq!(r.h0_surjective, Some(true));
}

#[test]
fn obstructions_are_gauge_invariant() {
    let mut rng = Lcg::new(17);
    for name in all_fixture_names() {
        let l = fixture(&name).unwrap();
        for s in ["t^3", "t^4", "x^2,xy,y^2"] {
            let b = ring(s);
            let e = small_extension_tower(&b).unwrap()[0].clone();
            let p = LiftingProblem::new(&l, &e).unwrap();
            for _ in 0..3 {
                let x = sample_mc(&l, &e.quotient, &mut rng).unwrap();
                let g = sample_element(&p.over_a, 0, &mut rng);
                let y = exp_action(&p.over_a, &g, &x).unwrap();
                match (p.obstruction(&x), p.obstruction(&y)) {
                    (Ok(a), Ok(b)) => assert_eq!(a.coords, b.coords, "{name} {s}"),
                    (Err(_), Err(_)) => {}
                    other => panic!("{name} {s}: {other:?}"),
                }
            }
        }
    }
}

#[test]
fn primary_pairing_is_symmetric_bilinear() {
    let mut rng = Lcg::new(9);
    for name in all_fixture_names() {
        let l = fixture(&name).unwrap();
        let Ok(z1) = l.cohomology_degree(1).map(|h| h.z) else {
            continue;
        };
        if !l.can_differentiate(2) || z1.dim() == 0 {
            continue;
        }
        let pick = |rng: &mut Lcg| {
            z1.basis().iter().fold(vec![int(0); l.dim(1)], |acc, z| {
                dgla::linalg::vector::add(&acc, &dgla::linalg::vector::scale(&rng.coeff(), z))
            })
        };
        for _ in 0..4 {
            let (u, v, w) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let uv = bracket_pairing(&l, &u, &v).unwrap();
            assert_eq!(uv, bracket_pairing(&l, &v, &u).unwrap(), "{name}");
            let sum = dgla::linalg::vector::add(&v, &w);
            let lin = dgla::linalg::vector::add(&uv, &bracket_pairing(&l, &u, &w).unwrap());
            assert_eq!(bracket_pairing(&l, &u, &sum).unwrap(), lin, "{name}");
            let diag: Vec<Scalar> = primary_obstruction(&l, &u).unwrap();
            let twice =
                dgla::linalg::vector::scale(&ratio(1, 2), &bracket_pairing(&l, &u, &u).unwrap());
            assert_eq!(diag, twice, "{name}");
        }
    }
}

#[test]
fn witness_search_finds_orbit_pairs_with_symmetries() {
    let mut rng = Lcg::new(21);
    for name in ["HW2", "POLY", "HW2_d", "POLY_d"] {
        let l = fixture(name).unwrap();
        assert!(l.cohomology_degree(0).unwrap().dim_h() > 0);
        for s in ["t^3", "t^4"] {
            let a = ring(s);
            let t = TensorDgla::new(&l, &a).unwrap();
            for _ in 0..4 {
                let x = sample_mc(&l, &a, &mut rng).unwrap();
                let g = sample_element(&t, 0, &mut rng);
                let y = exp_action(&t, &g, &x).unwrap();
                let dec = gauge_equivalent(&l, &a, &x, &y, DEFAULT_SEARCH_BUDGET).unwrap();
                assert!(!dec.complete);
                match dec.verdict {
                    Verdict::Equivalent { witness } => {
                        assert_eq!(exp_action(&t, &witness, &x).unwrap(), y)
                    }
                    v => panic!("{name} {s}: {v:?}"),
                }
            }
        }
    }
    let l = fixture("HW2").unwrap();
    let a = ring("t^3");
    let t = TensorDgla::new(&l, &a).unwrap();
    let x = sample_mc(&l, &a, &mut rng).unwrap();
    let dec = gauge_equivalent(
        &l,
        &a,
        &x,
        &exp_action(&t, &sample_element(&t, 0, &mut rng), &x).unwrap(),
        0,
    )
    .unwrap();
    assert!(matches!(
        dec.verdict,
        Verdict::Unknown { .. } | Verdict::Equivalent { .. }
    ));
}
