use num_traits::Zero;

use super::algebra::ArtinAlgebra;
use crate::dgla::{Dgla, DglaBuilder};
use crate::error::Result;
use crate::linalg::subspace::unit;
use crate::linalg::Matrix;

/// `L⊗m_A` with `A` in degree 0; the basis of degree `i` is indexed by
/// `k * dim m_A + α`.
pub fn tensor_nilpotent(l: &Dgla, a: &ArtinAlgebra) -> Result<Dgla> {
    let n = a.dim_m();
    let mut b = DglaBuilder::new(format!("{}⊗m({})", l.name(), a.name()), l.min(), l.max())
        .truncated_above(l.truncated_above());
    for d in l.space().degrees() {
        let labels = (0..l.dim(d))
            .flat_map(|k| a.labels().iter().map(move |al| (k, al)))
            .map(|(k, al)| format!("{}⊗{}", l.label(d, k), al))
            .collect();
        b.set_degree(d, labels);
    }
    for d in l.space().degrees() {
        let Some(blk) = l.diff_block(d) else { continue };
        let mut m = Matrix::zeros(blk.rows() * n, blk.cols() * n);
        for r in 0..blk.rows() {
            for c in 0..blk.cols() {
                let v = blk.get(r, c);
                if v.is_zero() {
                    continue;
                }
                for al in 0..n {
                    m.set(r * n + al, c * n + al, v.clone());
                }
            }
        }
        b.set_differential(d, m);
    }
    for i in l.space().degrees() {
        for j in l.space().degrees() {
            if !l.can_bracket(i, j) || !l.space().in_window(i + j) {
                continue;
            }
            for k in 0..l.dim(i) {
                for kk in 0..l.dim(j) {
                    let br = l.bracket_basis(i, k, j, kk)?;
                    for al in 0..n {
                        for be in 0..n {
                            let (x, y) = (k * n + al, kk * n + be);
                            b.add_bracket(i, x, j, y, 0, Zero::zero());
                            let ab = a.mul(&unit(n, al), &unit(n, be));
                            for (m, c) in br {
                                for (g, c2) in ab.iter().enumerate() {
                                    if !c2.is_zero() {
                                        b.add_bracket(i, x, j, y, m * n + g, c * c2);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    b.build()
}
