mod common;

use common::{any_fixture, fixture_from, ring_from, small_int, RINGS};
use dgla::artin::parse_ring;
use dgla::gauge::*;
use dgla::linalg::vector as vops;
use dgla::linalg::Scalar;
use dgla::mc::*;
use dgla::rng::Lcg;
use proptest::prelude::*;

proptest! {
    #![proptest_config(common::cases(48))]

    #[test]
    fn gauge_action_preserves_maurer_cartan((name, l) in any_fixture(), (r, a) in ring_from(RINGS), seed in any::<u64>()) {
        let t = TensorDgla::new(&l, &a).unwrap();
        let mut rng = Lcg::new(seed);
        let x = sample_mc(&l, &a, &mut rng).unwrap();
        let g = sample_element(&t, 0, &mut rng);
        prop_assert!(mc_check(&t, &exp_action(&t, &g, &x).unwrap()).unwrap(), "{} {}", name, r);
    }

    #[test]
    fn action_laws((_, l) in any_fixture(), (_, a) in ring_from(RINGS), seed in any::<u64>()) {
        let t = TensorDgla::new(&l, &a).unwrap();
        let mut rng = Lcg::new(seed);
        let x = sample_element(&t, 1, &mut rng);
        let (g, h) = (sample_element(&t, 0, &mut rng), sample_element(&t, 0, &mut rng));
        prop_assert_eq!(exp_action(&t, &t.zero(0), &x).unwrap(), x.clone());
        let twice = exp_action(&t, &g, &exp_action(&t, &h, &x).unwrap()).unwrap();
        prop_assert_eq!(twice, exp_action(&t, &gauge_bch(&t, &g, &h).unwrap(), &x).unwrap());
        // inverse
        let back = exp_action(&t, &g.neg(), &exp_action(&t, &g, &x).unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn first_order_action_is_translation((_, l) in any_fixture(), seed in any::<u64>()) {
        let t = TensorDgla::new(&l, &parse_ring("eps").unwrap()).unwrap();
        let mut rng = Lcg::new(seed);
        let x = sample_element(&t, 1, &mut rng);
        let b = sample_element(&t, 0, &mut rng);
        prop_assert_eq!(exp_action(&t, &b, &x).unwrap(), x.sub(&t.d(&b).unwrap()));
    }

    #[test]
    fn bracket_pairing_is_symmetric_bilinear((name, l) in any_fixture(), seed in any::<u64>(), c in small_int()) {
        let z = l.cohomology_degree(1).unwrap().z;
        let mut rng = Lcg::new(seed);
        let mut pick = || vops::combine(&rng.vector(z.dim()), z.basis(), l.dim(1));
        let (xi, eta, zeta) = (pick(), pick(), pick());
        let p = |u: &[Scalar], v: &[Scalar]| bracket_pairing(&l, u, v).unwrap();
        prop_assert_eq!(p(&xi, &eta), p(&eta, &xi), "{}", name);
        let lhs = p(&vops::add(&vops::scale(&c, &xi), &zeta), &eta);
        let rhs = vops::add(&vops::scale(&c, &p(&xi, &eta)), &p(&zeta, &eta));
        prop_assert_eq!(lhs, rhs);
        // the diagonal is twice the primary obstruction
        prop_assert_eq!(p(&xi, &xi), vops::scale(&dgla::linalg::scalar::int(2), &primary_obstruction(&l, &xi).unwrap()));
    }
}

proptest! {
    #![proptest_config(common::cases(16))]

    #[test]
    fn equivalence_decisions_are_sound(
        (name, l) in fixture_from(&["ABEL1", "D2", "QOBS", "CPLX2", "HW2", "POLY"]),
        (_, a) in ring_from(&["eps", "t^3", "x^2,xy,y^2"]),
        seed in any::<u64>(),
    ) {
        let t = TensorDgla::new(&l, &a).unwrap();
        let mut rng = Lcg::new(seed);
        let x = sample_mc(&l, &a, &mut rng).unwrap();
        let g = sample_element(&t, 0, &mut rng);
        let y = exp_action(&t, &g, &x).unwrap();
        let other = sample_mc(&l, &a, &mut rng).unwrap();
        for (target, related) in [(&y, true), (&other, false)] {
            let d = gauge_equivalent(&l, &a, &x, target, 300).unwrap();
            prop_assert_eq!(d.complete, l.h_dim(0).unwrap() == Some(0));
            match d.verdict {
                Verdict::Equivalent { witness } => {
                    prop_assert_eq!(&exp_action(&t, &witness, &x).unwrap(), target, "{}", name);
                }
                Verdict::NotEquivalent { .. } => {
                    prop_assert!(d.complete && !related, "{}", name);
                }
                Verdict::Unknown { .. } => prop_assert!(!d.complete),
            }
        }
    }
}
