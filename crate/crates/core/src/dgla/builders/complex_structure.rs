//! `Hom(V,V) ⊗ 𝕂[s]` with `s` central of degree one and differential
//! `[Js, ·]`, whose Maurer-Cartan elements `Hs` are exactly the `H` with
//! `(J + H)^2 = -I`.

use crate::dgla::algebra::{Dgla, DglaBuilder};
use crate::error::{Error, Result};
use crate::linalg::scalar::{int, sign};
use crate::linalg::{Matrix, Scalar};

/// The standard rotation `[[0, -I], [I, 0]]`.
pub fn standard_j(n: usize) -> Matrix {
    let h = n / 2;
    let mut j = Matrix::zeros(n, n);
    for i in 0..h {
        j.set(i, h + i, int(-1));
        j.set(h + i, i, int(1));
    }
    j
}

/// Flattens a square matrix row by row.
pub fn vec_of(m: &Matrix) -> Vec<Scalar> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

pub fn mat_of(v: &[Scalar], n: usize) -> Matrix {
    Matrix::from_vec(n, n, v.to_vec()).expect("square")
}

fn elementary(n: usize, a: usize, b: usize) -> Matrix {
    let mut e = Matrix::zeros(n, n);
    e.set(a, b, int(1));
    e
}

/// Matrix of `A ↦ JA + εAJ` on row-major flattened matrices.
fn twisted_commutator(j: &Matrix, eps: i64) -> Matrix {
    let n = j.rows();
    let mut out = Matrix::zeros(n * n, n * n);
    for a in 0..n {
        for b in 0..n {
            let e = elementary(n, a, b);
            let img = j
                .mul(&e)
                .unwrap()
                .add(&e.mul(j).unwrap().scale(&int(eps)))
                .unwrap();
            for (r, x) in vec_of(&img).into_iter().enumerate() {
                out.set(r, a * n + b, x);
            }
        }
    }
    out
}

pub fn build_example_j(dim: usize) -> Result<Dgla> {
    if dim == 0 || !dim.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "dimension must be even and positive, got {dim}"
        )));
    }
    let n = dim;
    let j = standard_j(n);
    let (min, max) = (1, 4);
    let mut b = DglaBuilder::new(format!("CPLX{n}"), min, max).truncated_above(true);
    let labels: Vec<String> = (0..n)
        .flat_map(|a| (0..n).map(move |c| format!("e{}{}", a + 1, c + 1)))
        .collect();
    for d in min..=max {
        b.set_degree(d, labels.clone());
    }
    for d in min..max {
        let eps = if d % 2 != 0 { 1 } else { -1 };
        b.set_differential(d, twisted_commutator(&j, eps));
    }
    for p in min..=max {
        for q in min..=max {
            if p + q > max {
                continue;
            }
            let s = sign((p * q) as i64);
            for (k, (a1, b1)) in (0..n).flat_map(|a| (0..n).map(move |c| (a, c))).enumerate() {
                for (l, (a2, b2)) in (0..n).flat_map(|a| (0..n).map(move |c| (a, c))).enumerate() {
                    // E_{a1 b1} E_{a2 b2} = δ_{b1 a2} E_{a1 b2}
                    if b1 == a2 {
                        b.add_bracket(p, k, q, l, a1 * n + b2, int(1));
                    }
                    if b2 == a1 {
                        b.add_bracket(p, k, q, l, a2 * n + b1, -s.clone());
                    }
                    b.add_bracket(p, k, q, l, 0, Scalar::default());
                }
            }
        }
    }
    b.build()
}
