use super::element::{TensorDgla, TensorElement};
use crate::dgla::Dgla;
use crate::error::{Error, Result};
use crate::linalg::scalar::ratio;
use crate::linalg::Subspace;

pub(crate) fn require_degree(x: &TensorElement, d: i32) -> Result<()> {
    if x.degree != d {
        return Err(Error::Degree {
            expected: d,
            found: x.degree,
        });
    }
    Ok(())
}

/// `dx + ½[x,x]`.
pub fn mc_residual(t: &TensorDgla, x: &TensorElement) -> Result<TensorElement> {
    require_degree(x, 1)?;
    let half = ratio(1, 2);
    Ok(t.d(x)?.add(&t.bracket(x, x)?.scale(&half)))
}

pub fn mc_check(t: &TensorDgla, x: &TensorElement) -> Result<bool> {
    Ok(mc_residual(t, x)?.is_zero())
}

/// `Z¹(L)`, the tangent space of `MC_L` at the origin.
pub fn mc_tangent(l: &Dgla) -> Result<Subspace> {
    Ok(l.cohomology_degree(1)?.z)
}
