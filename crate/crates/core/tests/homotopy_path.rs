use dgla::artin::*;
use dgla::dgla::fixtures::{all_fixture_names, cplx2, d2, fixture, hw2, qobs};
use dgla::gauge::*;
use dgla::homotopy::*;
use dgla::linalg::scalar::{int, ratio};
use dgla::mc::*;
use dgla::rng::Lcg;

fn ring(s: &str) -> ArtinAlgebra {
    parse_ring(s).unwrap()
}

fn space(name: &str, r: &str) -> PathSpace {
    let t = TensorDgla::new(&fixture(name).unwrap(), &ring(r)).unwrap();
    let cap = PathSpace::default_cap(&t, 2);
    PathSpace::new(&t, cap)
}

fn random_path(s: &PathSpace, degree: i32, len: usize, rng: &mut Lcg) -> PolyPath {
    let coeffs = (0..len)
        .map(|_| sample_element(&s.t, degree, rng))
        .collect();
    s.path(degree, coeffs).unwrap()
}

#[test]
fn differential_and_bracket_examples() {
    let s = space("QOBS", "t^3");
    let e = s.t.from_terms(1, &[("e", "t", int(1))]).unwrap();
    let c = s.constant_omega(&e).unwrap();
    let dc = s.omega_d(&c).unwrap();
    assert!(dc.a.is_zero() && dc.b.is_zero());
    let w = s.omega(s.monomial(&e, 1).unwrap(), s.zero(0)).unwrap();
    let dw = s.omega_d(&w).unwrap();
    assert_eq!(dw.b, s.constant(&e.neg()).unwrap());
    let br = s.omega_bracket(&c, &c).unwrap();
    assert_eq!(br.a, s.constant(&s.t.bracket(&e, &e).unwrap()).unwrap());
}

#[test]
fn evaluation_is_a_morphism() {
    let mut rng = Lcg::new(3);
    for name in ["D2", "QOBS", "HW2", "CPLX2", "D2_d", "POLY"] {
        let s = space(name, "t^3");
        for _ in 0..5 {
            let w1 = s
                .omega(
                    random_path(&s, 1, 3, &mut rng),
                    random_path(&s, 0, 2, &mut rng),
                )
                .unwrap();
            let w0 = s
                .omega(random_path(&s, 0, 2, &mut rng), s.zero(-1))
                .unwrap();
            for v in [int(0), int(1), ratio(-3, 2)] {
                if s.t.base().can_differentiate(1) {
                    let lhs = s.evaluate_omega(&s.omega_d(&w1).unwrap(), &v);
                    assert_eq!(lhs, s.t.d(&s.evaluate_omega(&w1, &v)).unwrap(), "{name}");
                }
                let br = s.omega_bracket(&w0, &w1).unwrap();
                assert_eq!(
                    s.evaluate_omega(&br, &v),
                    s.t.bracket(&s.evaluate_omega(&w0, &v), &s.evaluate_omega(&w1, &v))
                        .unwrap()
                );
            }
            assert_eq!(
                s.evaluate_omega(
                    &s.constant_omega(&s.evaluate(&w1.a, &int(2))).unwrap(),
                    &int(7)
                ),
                s.evaluate(&w1.a, &int(2))
            );
        }
    }
}

#[test]
fn mc_path_examples() {
    let s = space("D2", "eps");
    let u = s.t.from_terms(1, &[("u", "ε", int(1))]).unwrap();
    let c = s.t.from_terms(0, &[("c", "ε", int(1))]).unwrap();
    let w = s
        .omega(
            s.monomial(&u.neg(), 1).unwrap(),
            s.constant(&c.neg()).unwrap(),
        )
        .unwrap();
    assert!(s.mc_omega_check(&w).unwrap().ok());
    assert_eq!(s.evaluate_omega(&w, &int(1)), u.neg());
    assert!(s.evaluate_omega(&w, &int(0)).is_zero());
    assert_eq!(
        homotopy_from_gauge(&s, &c, &s.t.zero(1), &u.neg()).unwrap(),
        w
    );
    assert_eq!(gauge_from_homotopy(&s, &w).unwrap(), c);

    let s = space("QOBS", "t^3");
    let e = s.t.from_terms(1, &[("e", "t", int(1))]).unwrap();
    let w = s.omega(s.monomial(&e, 1).unwrap(), s.zero(0)).unwrap();
    let r = s.mc_omega_check(&w).unwrap();
    assert!(!r.ok());
    assert!(!r.pointwise_mc && !r.flow);
    let e2 = s.t.from_terms(1, &[("e", "t^2", int(1))]).unwrap();
    assert!(s
        .mc_omega_check(&s.constant_omega(&e2).unwrap())
        .unwrap()
        .ok());
    assert!(s
        .mc_omega_check(&s.omega(s.zero(0), s.zero(-1)).unwrap())
        .is_err());
}

#[test]
fn lifting_paths_through_towers() {
    let mut rng = Lcg::new(12);
    for name in all_fixture_names() {
        let l = fixture(&name).unwrap();
        for r in ["t^3", "x^2,xy,y^2", "t^4"] {
            let total = ring(r);
            for e in small_extension_tower(&total).unwrap() {
                let tb = TensorDgla::new(&l, &e.total).unwrap();
                let ta = TensorDgla::new(&l, &e.quotient).unwrap();
                let (sb, sa) = (PathSpace::new(&tb, 12), PathSpace::new(&ta, 12));
                let p = LiftingProblem::new(&l, &e).unwrap();
                // a homotopy over the quotient from a gauge, then lift it
                let x = sample_mc(&l, &e.quotient, &mut rng).unwrap();
                let g = sample_element(&ta, 0, &mut rng);
                let y = exp_action(&ta, &g, &x).unwrap();
                let w = homotopy_from_gauge(&sa, &g, &x, &y).unwrap();
                let Some(anchor) = p.lift(&x).unwrap() else {
                    continue;
                };
                let lifted = sb.lift_omega(&sa, &e, &w, &anchor, &int(0)).unwrap();
                assert!(sb.mc_omega_check(&lifted).unwrap().ok());
                assert_eq!(sb.map(&lifted.a, &sa, |c| p.project(c)).unwrap(), w.a);
                assert_eq!(
                    p.project(&sb.evaluate_omega(&lifted, &int(1))).unwrap(),
                    y,
                    "{name} {r}"
                );
                // the lift joins homotopic, hence gauge equivalent, endpoints
                let h = gauge_from_homotopy(&sb, &lifted).unwrap();
                assert_eq!(
                    exp_action(&tb, &h, &anchor).unwrap(),
                    sb.evaluate_omega(&lifted, &int(1))
                );
            }
        }
    }
}

#[test]
fn lift_of_constant_and_trivial_cases() {
    let l = d2();
    let e = small_extension_tower(&ring("t^3")).unwrap()[0].clone();
    let tb = TensorDgla::new(&l, &e.total).unwrap();
    let ta = TensorDgla::new(&l, &e.quotient).unwrap();
    let (sb, sa) = (PathSpace::new(&tb, 6), PathSpace::new(&ta, 6));
    let x = ta.from_terms(1, &[("u", "t", int(1))]).unwrap();
    let anchor = tb
        .from_terms(1, &[("u", "t", int(1)), ("u", "t^2", int(4))])
        .unwrap();
    let w = sa.constant_omega(&x).unwrap();
    let lifted = sb.lift_omega(&sa, &e, &w, &anchor, &int(0)).unwrap();
    assert_eq!(lifted, sb.constant_omega(&anchor).unwrap());
    // D2 over t³ → ε with a nonconstant path
    let e = small_extension_tower(&ring("t^2")).unwrap()[0].clone();
    let eps_like = TensorDgla::new(&l, &e.quotient).unwrap();
    assert_eq!(eps_like.ring().dim_m(), 0);
    let t3 = ring("t^3");
    let tower = small_extension_tower(&t3).unwrap();
    let e = &tower[0];
    let ta = TensorDgla::new(&l, &e.quotient).unwrap();
    let sa = PathSpace::new(&ta, 6);
    let c = ta.from_terms(0, &[("c", "t", int(1))]).unwrap();
    let y = exp_action(&ta, &c, &ta.zero(1)).unwrap();
    let w = homotopy_from_gauge(&sa, &c, &ta.zero(1), &y).unwrap();
    let lifted = sb.lift_omega(&sa, e, &w, &tb.zero(1), &int(0)).unwrap();
    assert_eq!(
        lifted.a,
        sb.monomial(&tb.from_terms(1, &[("u", "t", int(-1))]).unwrap(), 1)
            .unwrap()
    );
    assert!(sb
        .lift_omega(
            &sa,
            e,
            &w,
            &tb.from_terms(1, &[("u", "t", int(1))]).unwrap(),
            &int(0)
        )
        .is_err());
}

#[test]
fn gamma_examples() {
    let s = space("HW2", "t^4");
    let mut rng = Lcg::new(5);
    let n = sample_element(&s.t, 0, &mut rng);
    assert!(bch_gamma(&s, &s.constant(&n).unwrap()).unwrap().is_zero());
    assert!(bch_gamma(&s, &s.monomial(&n, 1).unwrap())
        .unwrap()
        .is_zero());
    // order two: γ_p = ½[p, p′] + longer brackets
    let (a, b) = (
        sample_element(&s.t, 0, &mut rng),
        sample_element(&s.t, 0, &mut rng),
    );
    let p = s.path(0, vec![s.t.zero(0), a.clone(), b.clone()]).unwrap();
    let dp = s.derivative(&p).unwrap();
    let gamma = bch_gamma(&s, &p).unwrap();
    let second = s.scale(&ratio(1, 2), &s.bracket(&p, &dp).unwrap()).unwrap();
    let rest = s.sub(&gamma, &second).unwrap();
    // what remains consists of triple and longer brackets, so it vanishes
    // modulo the cube of the maximal ideal
    let m3 = s.t.ring().power(3);
    for c in &rest.coeffs {
        for k in 0..s.t.base().dim(0) {
            assert!(m3.contains(&s.t.coefficient(c, k)));
        }
    }
    assert!(bch_gamma(&s, &random_path(&s, 1, 2, &mut rng)).is_err());
}

#[test]
fn gamma_matches_the_defining_identity() {
    let mut rng = Lcg::new(15);
    for name in ["HW2", "POLY", "HW2_d"] {
        let s = space(name, "t^3");
        let p = random_path(&s, 0, 3, &mut rng);
        let gamma = bch_gamma(&s, &p).unwrap();
        let lhs = gauge_ode_lhs(&s, &p).unwrap();
        assert_eq!(lhs, s.add(&s.derivative(&p).unwrap(), &gamma).unwrap());
        // flow identity d/dt(e^{p(t)} x) = [p′+γ_p, e^{p(t)} x]_V on MC x
        let x = sample_mc(s.t.base(), s.t.ring(), &mut rng).unwrap();
        let mut coeffs = Vec::new();
        for k in 0..12 {
            let at = exp_action(&s.t, &s.evaluate(&p, &int(k)), &x).unwrap();
            coeffs.push(at);
        }
        // compare derivatives at integer points through finite interpolation
        let flow = |tv: i64| {
            let v = s.evaluate(&lhs, &int(tv));
            let a = exp_action(&s.t, &s.evaluate(&p, &int(tv)), &x).unwrap();
            s.t.bracket(&v, &a).unwrap().sub(&s.t.d(&v).unwrap())
        };
        let path = interpolate(&s, &coeffs);
        let deriv = s.derivative(&path).unwrap();
        for tv in 0..3 {
            assert_eq!(s.evaluate(&deriv, &int(tv)), flow(tv), "{name}");
        }
    }
}

/// Newton interpolation of values at `t = 0, 1, …`.
fn interpolate(s: &PathSpace, values: &[TensorElement]) -> PolyPath {
    let n = values.len();
    let mut diffs = values.to_vec();
    let mut out = s.zero(values[0].degree);
    // falling-factorial Newton form Σ Δ^k f(0) · t(t−1)…(t−k+1)/k!
    let mut falling: Vec<dgla::linalg::Scalar> = vec![int(1)];
    for k in 0..n {
        let coef = diffs[0].scale(&ratio(1, (1..=k as i64).product::<i64>().max(1)));
        for (j, f) in falling.iter().enumerate() {
            out = s
                .add(&out, &s.monomial(&coef.scale(f), j).unwrap())
                .unwrap();
        }
        let mut next = vec![int(0); falling.len() + 1];
        for (j, f) in falling.iter().enumerate() {
            next[j + 1] += f.clone();
            next[j] -= f.clone() * int(k as i64);
        }
        falling = next;
        diffs = diffs.windows(2).map(|w| w[1].sub(&w[0])).collect();
        if diffs.is_empty() {
            break;
        }
    }
    out
}

#[test]
fn ode_examples_and_uniqueness() {
    let s = space("D2", "t^3");
    let c =
        s.t.from_terms(0, &[("c", "t", int(1)), ("c", "t^2", int(2))])
            .unwrap();
    let b = s.path(0, vec![c.clone(), c.scale(&int(3))]).unwrap();
    assert_eq!(
        solve_gauge_ode(&s, &b, None).unwrap(),
        s.integral(&b).unwrap()
    );
    let mut rng = Lcg::new(8);
    for name in ["HW2", "POLY", "HW2_d", "POLY_d"] {
        for r in ["t^3", "t^4", "x^2,xy,y^2"] {
            let s = space(name, r);
            let n = sample_element(&s.t, 0, &mut rng);
            assert_eq!(
                solve_gauge_ode(&s, &s.constant(&n).unwrap(), None).unwrap(),
                s.monomial(&n, 1).unwrap()
            );
            let b = random_path(&s, 0, 2, &mut rng);
            let p = solve_gauge_ode(&s, &b, None).unwrap();
            assert!(s.evaluate(&p, &int(0)).is_zero());
            assert_eq!(gauge_ode_lhs(&s, &p).unwrap(), b);
            let q = solve_gauge_ode(&s, &b, Some(&mut rng)).unwrap();
            assert_eq!(p, q, "{name} {r}");
        }
    }
}

#[test]
fn tangent_difference_is_b1() {
    for name in all_fixture_names() {
        let l = fixture(&name).unwrap();
        let b1 = l.cohomology_degree(1).unwrap().b;
        for d in 1..=3 {
            assert!(
                tangent_difference_image(&l, d).unwrap().same_as(&b1),
                "{name}"
            );
        }
    }
    assert_eq!(tangent_difference_image(&d2(), 2).unwrap().dim(), 1);
    assert_eq!(tangent_difference_image(&qobs(), 2).unwrap().dim(), 0);
    assert_eq!(tangent_difference_image(&cplx2(), 2).unwrap().dim(), 0);
}

#[test]
fn gauge_homotopy_round_trips() {
    let mut rng = Lcg::new(30);
    for name in all_fixture_names() {
        for r in ["eps", "t^3", "x^2,xy,y^2"] {
            let s = space(&name, r);
            for _ in 0..4 {
                let x = sample_mc(s.t.base(), s.t.ring(), &mut rng).unwrap();
                let g = sample_element(&s.t, 0, &mut rng);
                let y = exp_action(&s.t, &g, &x).unwrap();
                let w = homotopy_from_gauge(&s, &g, &x, &y).unwrap();
                assert_eq!(s.evaluate_omega(&w, &int(0)), x);
                let g2 = gauge_from_homotopy(&s, &w).unwrap();
                assert_eq!(exp_action(&s.t, &g2, &x).unwrap(), y, "{name} {r}");
                let w2 = homotopy_from_gauge(&s, &g2, &x, &y).unwrap();
                assert_eq!(s.evaluate_omega(&w2, &int(1)), y);
            }
        }
    }
    let s = PathSpace::new(&TensorDgla::new(&hw2(), &ring("t^3")).unwrap(), 4);
    let x = s.t.zero(1);
    assert_eq!(
        gauge_from_homotopy(&s, &s.constant_omega(&x).unwrap()).unwrap(),
        s.t.zero(0)
    );
}
