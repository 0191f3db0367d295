use num_traits::Zero;

use crate::dgla::algebra::{Dgla, DglaBuilder};
use crate::error::Result;
use crate::linalg::scalar::{int, sign};
use crate::linalg::{Matrix, Scalar};

/// Label of the adjoined differential.
pub const D_LABEL: &str = "d";

/// `L_d`: adjoins `d` to degree one with `[d, b] = db`,
/// `[b, d] = -(-1)^{|b|} db`, `[d, d] = 0` and `d_d(a + vd) = da`.
/// The new basis vector is the last one of degree one.
pub fn extend_with_d(l: &Dgla) -> Result<Dgla> {
    let min = l.min().min(1);
    let max = l.max().max(1);
    let mut b =
        DglaBuilder::new(format!("{}_d", l.name()), min, max).truncated_above(l.truncated_above());
    for deg in min..=max {
        let mut labels: Vec<String> = l.space().labels(deg).to_vec();
        if deg == 1 {
            let mut name = D_LABEL.to_string();
            while labels.contains(&name) {
                name.push('\'');
            }
            labels.push(name);
        }
        b.set_degree(deg, labels);
    }
    let nd = l.dim(1);
    for deg in min..=max {
        if !l.can_differentiate(deg) || (l.truncated_above() && deg == max) {
            continue;
        }
        let src = b.dim(deg);
        let tgt = b.dim(deg + 1);
        let mut m = Matrix::zeros(tgt, src);
        if l.space().in_window(deg) {
            let blk = l.diff_block(deg).expect("known differential");
            for r in 0..blk.rows() {
                for c in 0..blk.cols() {
                    m.set(r, c, blk.get(r, c).clone());
                }
            }
        }
        b.set_differential(deg, m);
    }
    for ((i, j), table) in l.bracket_table() {
        let dj = l.dim(*j);
        for (idx, v) in table.iter().enumerate() {
            let (k, m) = (idx / dj, idx % dj);
            b.add_bracket(*i, k, *j, m, 0, Scalar::zero());
            for (t, c) in v {
                b.add_bracket(*i, k, *j, m, *t, c.clone());
            }
        }
    }
    for j in l.space().degrees() {
        if !l.can_bracket(1, j) || !l.can_differentiate(j) {
            continue;
        }
        for m in 0..l.dim(j) {
            let e = crate::linalg::subspace::unit(l.dim(j), m);
            let db = l.d(j, &e)?;
            b.add_bracket(1, nd, j, m, 0, Scalar::zero());
            b.add_bracket(j, m, 1, nd, 0, Scalar::zero());
            let s = -sign(j as i64);
            for (t, c) in db.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                b.add_bracket(1, nd, j, m, t, c.clone());
                b.add_bracket(j, m, 1, nd, t, &s * c);
            }
        }
    }
    b.add_bracket(1, nd, 1, nd, 0, int(0));
    b.build()
}
