use std::collections::BTreeMap;

use num_traits::Zero;

use crate::dgla::algebra::{Dgla, DglaBuilder};
use crate::dgla::graded_algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::linalg::scalar::sign;
use crate::linalg::{Matrix, Scalar};

/// `(L⊗A)^n = ⊕ L^i ⊗ A^{n-i}` with `d(x⊗a) = dx⊗a` and
/// `[x⊗a, y⊗b] = (-1)^{|a||y|} [x,y]⊗ab`.
pub fn tensor_with_graded_algebra(l: &Dgla, a: &GradedAlgebra) -> Result<Dgla> {
    if !a.is_graded_commutative() {
        return Err(Error::InvalidAlgebra(
            "coefficient algebra is not graded commutative".into(),
        ));
    }
    if !a.is_associative() {
        return Err(Error::InvalidAlgebra(
            "coefficient algebra is not associative".into(),
        ));
    }
    let asp = a.space();
    let min = l.min() + asp.min();
    let max = if l.truncated_above() {
        l.max() + asp.min()
    } else {
        l.max() + asp.max()
    };
    // basis of degree n: (i, k, j, alpha) with i + j = n
    let mut basis: BTreeMap<i32, Vec<(i32, usize, i32, usize)>> = BTreeMap::new();
    for n in min..=max {
        let mut els = Vec::new();
        for i in l.space().degrees() {
            let j = n - i;
            for k in 0..l.dim(i) {
                for al in 0..a.dim(j) {
                    els.push((i, k, j, al));
                }
            }
        }
        basis.insert(n, els);
    }
    let pos: BTreeMap<(i32, usize, i32, usize), usize> = basis
        .values()
        .flat_map(|els| els.iter().enumerate().map(|(p, e)| (*e, p)))
        .collect();

    let mut b =
        DglaBuilder::new(format!("{}⊗A", l.name()), min, max).truncated_above(l.truncated_above());
    for n in min..=max {
        b.set_degree(
            n,
            basis[&n]
                .iter()
                .map(|&(i, k, j, al)| format!("{}⊗{}", l.label(i, k), asp.label(j, al)))
                .collect(),
        );
    }
    for n in min..=max {
        if l.truncated_above() && n == max {
            continue;
        }
        let src = &basis[&n];
        let tgt_dim = basis.get(&(n + 1)).map_or(0, Vec::len);
        let mut m = Matrix::zeros(tgt_dim, src.len());
        for (c, &(i, k, j, al)) in src.iter().enumerate() {
            let e = crate::linalg::subspace::unit(l.dim(i), k);
            let dx = l.d(i, &e)?;
            for (r, v) in dx.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(pos[&(i + 1, r, j, al)], c, v);
                }
            }
        }
        b.set_differential(n, m);
    }
    for p in min..=max {
        for q in min..=max {
            if p + q > max || p + q < min {
                continue;
            }
            for (x, &(i, k, j, al)) in basis[&p].iter().enumerate() {
                for (y, &(i2, k2, j2, be)) in basis[&q].iter().enumerate() {
                    b.add_bracket(p, x, q, y, 0, Scalar::zero());
                    let ab = a.basis_product(j, al, j2, be);
                    if ab.is_empty() {
                        continue;
                    }
                    let br = l.bracket_basis(i, k, i2, k2)?;
                    let s = sign((j * i2) as i64);
                    for (m, c) in br {
                        for (g, c2) in ab {
                            let t = pos[&(i + i2, *m, j + j2, *g)];
                            b.add_bracket(p, x, q, y, t, &s * c * c2);
                        }
                    }
                }
            }
        }
    }
    b.build()
}
