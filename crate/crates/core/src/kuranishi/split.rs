use std::collections::BTreeMap;

use num_traits::Zero;

use crate::dgla::Dgla;
use crate::error::{Error, Result};
use crate::graded::DegreeCohomology;
use crate::linalg::subspace::unit;
use crate::linalg::{Matrix, Scalar};

/// `Zⁱ = Bⁱ ⊕ Hⁱ`, `Lⁱ = Zⁱ ⊕ Cⁱ` and the contraction `δ: Lⁱ⁺¹ → Lⁱ`
/// (project to `Bⁱ⁺¹`, invert `d` onto `Cⁱ`).
#[derive(Clone, Debug)]
pub struct HodgeSplit {
    dgla: Dgla,
    degrees: BTreeMap<i32, DegreeCohomology>,
    /// `delta[i]: Lⁱ → Lⁱ⁻¹`.
    delta: BTreeMap<i32, Matrix>,
    h_proj: BTreeMap<i32, Matrix>,
}

impl HodgeSplit {
    pub fn new(l: &Dgla) -> Result<Self> {
        let mut degrees = BTreeMap::new();
        for i in l.min() - 1..=l.max() + 1 {
            if let Ok(c) = l.cohomology_degree(i) {
                degrees.insert(i, c);
            }
        }
        let mut delta = BTreeMap::new();
        for (&i, ci) in &degrees {
            let Some(below) = degrees.get(&(i - 1)) else {
                continue;
            };
            let n = l.dim(i);
            let mut m = Matrix::zeros(l.dim(i - 1), n);
            if below.c.dim() > 0 && n > 0 {
                let dc = l
                    .diff_block(i - 1)
                    .ok_or_else(|| Error::Internal("missing differential".into()))?
                    .mul(&below.c.basis_matrix())?;
                for k in 0..n {
                    let b = ci.b_part(&unit(n, k));
                    if b.iter().all(Zero::is_zero) {
                        continue;
                    }
                    let y = dc
                        .solve_affine(&b)?
                        .ok_or_else(|| Error::Internal("d is not onto B from C".into()))?
                        .particular;
                    let v = crate::linalg::vector::combine(&y, below.c.basis(), l.dim(i - 1));
                    for (r, c) in v.into_iter().enumerate() {
                        m.set(r, k, c);
                    }
                }
            }
            delta.insert(i, m);
        }
        let h_proj = degrees
            .iter()
            .map(|(&i, c)| (i, c.harmonic_projector()))
            .collect();
        let s = HodgeSplit {
            dgla: l.clone(),
            degrees,
            delta,
            h_proj,
        };
        if let Some(bad) = s.identities()?.into_iter().find(|(_, ok)| !ok) {
            return Err(Error::Internal(format!(
                "Hodge identity fails in degree {}",
                bad.0
            )));
        }
        Ok(s)
    }

    pub fn dgla(&self) -> &Dgla {
        &self.dgla
    }

    pub fn degree(&self, i: i32) -> Result<&DegreeCohomology> {
        self.degrees
            .get(&i)
            .ok_or_else(|| Error::Window(format!("no splitting in degree {i}")))
    }

    /// `δ: Lⁱ → Lⁱ⁻¹`.
    pub fn delta(&self, i: i32) -> Result<&Matrix> {
        self.delta
            .get(&i)
            .ok_or_else(|| Error::Window(format!("δ out of degree {i} is unavailable")))
    }

    /// Projector onto `Hⁱ` with kernel `Bⁱ ⊕ Cⁱ`.
    pub fn h(&self, i: i32) -> Result<&Matrix> {
        self.h_proj
            .get(&i)
            .ok_or_else(|| Error::Window(format!("H is unavailable in degree {i}")))
    }

    fn d(&self, i: i32) -> Matrix {
        let l = &self.dgla;
        l.diff_block(i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(l.dim(i + 1), l.dim(i)))
    }

    /// Per degree: `dδ + δd = Id − H`, `δδ = 0`, `dδd = d`, `H² = H`.
    pub fn identities(&self) -> Result<Vec<(i32, bool)>> {
        let mut out = Vec::new();
        for (&i, h) in &self.h_proj {
            let (Ok(down), Ok(up)) = (self.delta(i), self.delta(i + 1)) else {
                continue;
            };
            if !self.dgla.can_differentiate(i) {
                continue;
            }
            let n = self.dgla.dim(i);
            let d_i = self.d(i);
            let d_prev = self.d(i - 1);
            let lhs = d_prev.mul(down)?.add(&up.mul(&d_i)?)?;
            let rhs = Matrix::identity(n).sub(h)?;
            let mut ok = lhs == rhs && h.mul(h)? == *h;
            if let Ok(down2) = self.delta(i - 1) {
                ok &= down2.mul(down)?.is_zero();
            }
            ok &= d_i.mul(up)?.mul(&d_i)? == d_i;
            out.push((i, ok));
        }
        Ok(out)
    }

    pub fn apply_delta(&self, i: i32, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.delta(i)?.mul_vec(v)
    }
}
