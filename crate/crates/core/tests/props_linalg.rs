mod common;

use common::{matrix, vector};
use dgla::graded::{cohomology, verify_complex, GradedMap, GradedSpace};
use dgla::linalg::{complement, vector as vops, Matrix, Scalar, Subspace};
use num_traits::Zero;
use proptest::prelude::*;

fn rank_nullity(a: &Matrix) -> bool {
    a.kernel().dim() + a.image().dim() == a.cols()
}

/// `d₁ = R·N` with the rows of `N` spanning the left kernel of `d₀`.
fn complex(d0: &Matrix, r: &Matrix) -> Matrix {
    let left = d0.transpose().kernel();
    let n = Matrix::from_rows(left.vectors(), d0.rows())
        .unwrap_or_else(|_| Matrix::zeros(0, d0.rows()));
    r.mul(&n).unwrap()
}

fn two_step() -> impl Strategy<Value = (Matrix, Matrix)> {
    matrix(4, 4).prop_flat_map(|d0| {
        let k = d0.transpose().kernel().dim();
        let r = (0..=4usize).prop_flat_map(move |rows| {
            vector(rows * k).prop_map(move |v| Matrix::from_vec(rows, k, v).unwrap())
        });
        (Just(d0), r)
    })
}

proptest! {
    #![proptest_config(common::cases(96))]

    #[test]
    fn rank_plus_nullity_is_cols(a in matrix(6, 6)) {
        prop_assert!(rank_nullity(&a));
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn affine_solutions_are_exact(a in matrix(5, 5), x0 in vector(5), b in vector(5)) {
        let x0 = &x0[..a.cols()];
        let b0 = a.mul_vec(x0).unwrap();
        let s = a.solve_affine(&b0).unwrap().expect("b is in the image");
        prop_assert_eq!(a.mul_vec(&s.particular).unwrap(), b0);
        for k in s.nullspace.basis() {
            prop_assert!(vops::is_zero(&a.mul_vec(k).unwrap()));
        }
        let b = &b[..a.rows()];
        match a.solve_affine(b).unwrap() {
            Some(s) => prop_assert_eq!(a.mul_vec(&s.particular).unwrap(), b.to_vec()),
            None => prop_assert!(!a.image().contains(b)),
        }
    }

    #[test]
    fn complements_fill_the_outer_space(vs in proptest::collection::vec(vector(5), 0..5), mix in vector(25)) {
        let v = Subspace::span(5, vs.clone()).unwrap();
        // U is spanned by combinations of the spanning vectors of V
        let us: Vec<Vec<Scalar>> = (0..vs.len().min(3))
            .map(|j| {
                let mut u = vec![Scalar::zero(); 5];
                for (i, w) in vs.iter().enumerate() {
                    for k in 0..5 {
                        u[k] += &mix[(i * 5 + j) % 25] * &w[k];
                    }
                }
                u
            })
            .collect();
        let u = Subspace::span(5, us).unwrap();
        let c = complement(&u, &v).unwrap();
        prop_assert_eq!(u.dim() + c.dim(), v.dim());
        prop_assert!(u.sum(&c).unwrap().same_as(&v));
        prop_assert_eq!(u.intersection(&c).unwrap().dim(), 0);
    }

    #[test]
    fn cohomology_splitting((d0, r) in two_step()) {
        let (n0, n1) = (d0.cols(), d0.rows());
        let d1 = complex(&d0, &r);
        let n2 = d1.rows();
        let space = GradedSpace::with_dims(0, &[n0, n1, n2]).unwrap();
        let mut d = GradedMap::new(1);
        d.blocks.insert(0, d0.clone());
        d.blocks.insert(1, d1.clone());
        d.blocks.insert(2, Matrix::zeros(0, n2));
        prop_assert!(verify_complex(&space, &d).unwrap().passed());
        let h = cohomology(&space, &d).unwrap();
        let mut chi_h = 0i64;
        let mut chi = 0i64;
        let ranks = [0, d0.rank(), d1.rank(), 0];
        for (i, n) in [n0, n1, n2].into_iter().enumerate() {
            let c = h.at(i as i32).unwrap();
            let sign = if i % 2 == 0 { 1 } else { -1 };
            chi_h += sign * c.dim_h() as i64;
            chi += sign * (n as i64 - ranks[i + 1] as i64 - ranks[i] as i64);
            let p = c.class_projection();
            for b in c.b.basis() {
                prop_assert!(c.h_coords(b).iter().all(Zero::is_zero));
            }
            for (j, rep) in c.h.basis().iter().enumerate() {
                let cls = c.class_of(rep).unwrap();
                prop_assert_eq!(cls, dgla::linalg::subspace::unit(c.dim_h(), j));
            }
            prop_assert_eq!(p.rank(), c.dim_h());
        }
        prop_assert_eq!(chi_h, chi);
        let alt: i64 = [n0, n1, n2].iter().enumerate().map(|(i, n)| if i % 2 == 0 { *n as i64 } else { -(*n as i64) }).sum();
        prop_assert_eq!(chi_h, alt);
    }
}
