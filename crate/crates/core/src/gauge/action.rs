use super::bch::{ad_series, bch, NilpotentLie};
use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::mc::equation::require_degree;
use crate::mc::{TensorDgla, TensorElement};

/// `L⁰⊗m_A` with its bracket.
impl NilpotentLie for TensorDgla {
    type Elem = TensorElement;

    fn zero(&self) -> TensorElement {
        TensorDgla::zero(self, 0)
    }

    fn add(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        a.add(b)
    }

    fn scale(&self, c: &Scalar, a: &TensorElement) -> TensorElement {
        a.scale(c)
    }

    fn bracket(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
        TensorDgla::bracket(self, a, b)
    }

    fn is_zero(&self, a: &TensorElement) -> bool {
        a.is_zero()
    }

    fn nilpotency(&self) -> usize {
        self.ring().nilpotency_index()
    }
}

/// `e^a * x = x + Σ_{n≥0} (ad a)^n ([a,x] − da) / (n+1)!`.
pub fn exp_action(t: &TensorDgla, a: &TensorElement, x: &TensorElement) -> Result<TensorElement> {
    require_degree(a, 0)?;
    require_degree(x, 1)?;
    if a.coeffs.len() != t.dim(0) || x.coeffs.len() != t.dim(1) {
        return Err(Error::Shape(
            "gauge action on elements of another algebra".into(),
        ));
    }
    if a.is_zero() {
        return Ok(x.clone());
    }
    let gen = t.bracket(a, x)?.sub(&t.d(a)?);
    Ok(x.add(&ad_series(t, a, &gen, 1)?))
}

/// `a ∘ b` with `e^{a∘b} = e^a e^b`.
pub fn gauge_bch(t: &TensorDgla, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
    require_degree(a, 0)?;
    require_degree(b, 0)?;
    bch(t, a, b)
}
