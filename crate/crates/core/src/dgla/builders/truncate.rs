use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::dgla::algebra::{Dgla, DglaBuilder};
use crate::dgla::morphism::DglaMorphism;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

/// The sub-DGLA `N` with `N^i = 0` for `i ≤ 0`, `N^1` the given complement
/// of `B^1` and `N^i = L^i` above, with its inclusion into `L`.
pub fn truncate_positive(l: &Dgla, complement_of_b1: &Subspace) -> Result<DglaMorphism> {
    let n1 = l.dim(1);
    if complement_of_b1.ambient() != n1 {
        return Err(Error::Shape("complement lives in the wrong space".into()));
    }
    let b1 = if l.space().in_window(0) {
        l.diff_block(0).expect("degree 0 differential").image()
    } else {
        Subspace::zero(n1)
    };
    let sum = b1.sum(complement_of_b1)?;
    if sum.dim() != n1 || b1.dim() + complement_of_b1.dim() != n1 {
        return Err(Error::Precondition(
            "complement is not transverse to B^1".into(),
        ));
    }
    let max = l.max().max(1);
    let mut b =
        DglaBuilder::new(format!("{}>0", l.name()), 1, max).truncated_above(l.truncated_above());
    let incl1 = complement_of_b1.basis_matrix();
    let labels1: Vec<String> = complement_of_b1
        .basis()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let nz: Vec<usize> = (0..v.len()).filter(|&k| !v[k].is_zero()).collect();
            if nz.len() == 1 && v[nz[0]].is_one() {
                l.label(1, nz[0]).to_string()
            } else {
                format!("n1_{i}")
            }
        })
        .collect();
    b.set_degree(1, labels1);
    for d in 2..=max {
        b.set_degree(d, l.space().labels(d).to_vec());
    }
    let incl = |d: i32| -> Matrix {
        if d == 1 {
            incl1.clone()
        } else {
            Matrix::identity(l.dim(d))
        }
    };
    for d in 1..=max {
        if l.truncated_above() && d == max {
            continue;
        }
        let blk = l
            .diff_block(d)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(l.dim(d + 1), l.dim(d)));
        b.set_differential(d, blk.mul(&incl(d))?);
    }
    for i in 1..=max {
        for j in 1..=max {
            if i + j > max {
                continue;
            }
            let (fi, fj) = (incl(i), incl(j));
            for k in 0..b.dim(i) {
                let x = fi.col(k);
                for m in 0..b.dim(j) {
                    let y = fj.col(m);
                    let br = l.bracket(i, &x, j, &y)?;
                    b.add_bracket(i, k, j, m, 0, Zero::zero());
                    for (t, c) in br.into_iter().enumerate() {
                        if !c.is_zero() {
                            b.add_bracket(i, k, j, m, t, c);
                        }
                    }
                }
            }
        }
    }
    let n = b.build()?;
    let blocks: BTreeMap<i32, Matrix> = (1..=max).map(|d| (d, incl(d))).collect();
    DglaMorphism::new(n, l.clone(), blocks)
}
