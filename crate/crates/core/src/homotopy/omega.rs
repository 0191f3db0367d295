use super::path::{PathSpace, PolyPath};
use crate::artin::SmallExtension;
use crate::dgla::Dgla;
use crate::error::{Error, Result};
use crate::linalg::scalar::{int, ratio, sign};
use crate::linalg::{Matrix, Scalar, Subspace};
use crate::mc::{mc_check, LiftingProblem, TensorElement};

/// `a(t) + b(t)dt ∈ Ω^i`, with `a` in degree `i` and `b` in degree `i−1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaElement {
    pub a: PolyPath,
    pub b: PolyPath,
}

impl OmegaElement {
    pub fn degree(&self) -> i32 {
        self.a.degree
    }
}

impl PathSpace {
    pub fn omega(&self, a: PolyPath, b: PolyPath) -> Result<OmegaElement> {
        if b.degree != a.degree - 1 {
            return Err(Error::Degree {
                expected: a.degree - 1,
                found: b.degree,
            });
        }
        Ok(OmegaElement { a, b })
    }

    /// A path constant in `t` with no `dt` part.
    pub fn constant_omega(&self, x: &TensorElement) -> Result<OmegaElement> {
        self.omega(self.constant(x)?, self.zero(x.degree - 1))
    }

    /// `δa + (−1)^i a′dt + δb dt`.
    pub fn omega_d(&self, w: &OmegaElement) -> Result<OmegaElement> {
        let a = self.d(&w.a)?;
        let da = self.scale(&sign(w.degree() as i64), &self.derivative(&w.a)?)?;
        let b = self.add(&da, &self.d(&w.b)?)?;
        self.omega(a, b)
    }

    /// `[a₁+b₁dt, a₂+b₂dt] = [a₁,a₂] + ([a₁,b₂] + (−1)^{|a₂|}[b₁,a₂])dt`.
    pub fn omega_bracket(&self, w1: &OmegaElement, w2: &OmegaElement) -> Result<OmegaElement> {
        let a = self.bracket(&w1.a, &w2.a)?;
        let left = self.bracket(&w1.a, &w2.b)?;
        let right = self.scale(&sign(w2.degree() as i64), &self.bracket(&w1.b, &w2.a)?)?;
        self.omega(a, self.add(&left, &right)?)
    }

    /// `v_s`: substitutes `t = s`, `dt = 0`.
    pub fn evaluate_omega(&self, w: &OmegaElement, s: &Scalar) -> TensorElement {
        self.evaluate(&w.a, s)
    }

    pub fn mc_omega_check(&self, w: &OmegaElement) -> Result<OmegaMcReport> {
        if w.degree() != 1 {
            return Err(Error::Degree {
                expected: 1,
                found: w.degree(),
            });
        }
        let aa = self.bracket(&w.a, &w.a)?;
        let pointwise = self.add(&self.d(&w.a)?, &self.scale(&ratio(1, 2), &aa)?)?;
        let flow = self.sub(
            &self.derivative(&w.a)?,
            &self.add(&self.d(&w.b)?, &self.bracket(&w.a, &w.b)?)?,
        )?;
        Ok(OmegaMcReport {
            pointwise_mc: pointwise.is_zero(),
            flow: flow.is_zero(),
        })
    }

    /// Lifts a Maurer-Cartan path over the quotient of `e` to one over its
    /// total ring passing through `anchor` at `t = s`.
    pub fn lift_omega(
        &self,
        quotient: &PathSpace,
        e: &SmallExtension,
        w: &OmegaElement,
        anchor: &TensorElement,
        s: &Scalar,
    ) -> Result<OmegaElement> {
        let p = LiftingProblem::new(self.t.base(), e)?;
        if p.over_b.ring() != self.t.ring() || p.over_a.ring() != quotient.t.ring() {
            return Err(Error::Shape(
                "path spaces do not match the extension".into(),
            ));
        }
        if !quotient.mc_omega_check(w)?.ok() {
            return Err(Error::Precondition("path is not Maurer-Cartan".into()));
        }
        if !mc_check(&self.t, anchor)? {
            return Err(Error::NotMaurerCartan(self.t.describe(anchor)));
        }
        if p.project(anchor)? != quotient.evaluate_omega(w, s) {
            return Err(Error::Precondition(
                "anchor does not reduce to the path at s".into(),
            ));
        }
        let lifted = quotient.map(&w.a, self, |x| p.section_lift(x))?;
        let fix = anchor.sub(&self.evaluate(&lifted, s));
        let a_tilde = self.add(&lifted, &self.constant(&fix)?)?;
        let b = quotient.map(&w.b, self, |x| p.section_lift(x))?;
        let gamma = self.sub(
            &self.add(&self.d(&b)?, &self.bracket(&a_tilde, &b)?)?,
            &self.derivative(&a_tilde)?,
        )?;
        let a = self.add(&a_tilde, &self.integral_from(&gamma, s)?)?;
        let out = self.omega(a, b)?;
        if !self.mc_omega_check(&out)?.ok() || self.evaluate_omega(&out, s) != *anchor {
            return Err(Error::Internal("lifted path is not Maurer-Cartan".into()));
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct OmegaMcReport {
    /// `δa(t) + ½[a(t),a(t)] = 0` as a polynomial.
    pub pointwise_mc: bool,
    /// `a′ = δb + [a,b]`.
    pub flow: bool,
}

impl OmegaMcReport {
    pub fn ok(&self) -> bool {
        self.pointwise_mc && self.flow
    }
}

/// `{v₁(ω) − v₀(ω)}` over tangent vectors `ω = a(t) + b(t)dt` of `MC_Ω`
/// with `a` of `t`-degree at most `max_t`.
pub fn tangent_difference_image(l: &Dgla, max_t: usize) -> Result<Subspace> {
    let z1 = l.cohomology_degree(1)?.z;
    let (nz, n0, n1) = (z1.dim(), l.dim(0), l.dim(1));
    if max_t == 0 {
        return Ok(Subspace::zero(n1));
    }
    // unknowns: α_1..α_D (coordinates in Z¹) then b_0..b_{D−1}
    let cols = max_t * nz + max_t * n0;
    let zmat = z1.basis_matrix();
    let d0 = match l.diff_block(0) {
        Some(m) => m.clone(),
        None => Matrix::zeros(n1, n0),
    };
    let mut m = Matrix::zeros(max_t * n1, cols);
    for k in 0..max_t {
        // (k+1)·a_{k+1} − δb_k = 0
        for r in 0..n1 {
            for c in 0..nz {
                m.set(k * n1 + r, k * nz + c, zmat.get(r, c) * int(k as i64 + 1));
            }
            for c in 0..n0 {
                m.set(k * n1 + r, max_t * nz + k * n0 + c, -d0.get(r, c).clone());
            }
        }
    }
    let mut imgs = Vec::new();
    for v in m.kernel().basis() {
        let mut diff = vec![Scalar::default(); n1];
        for k in 0..max_t {
            let a = zmat.mul_vec(&v[k * nz..(k + 1) * nz])?;
            diff = crate::linalg::vector::add(&diff, &a);
        }
        imgs.push(diff);
    }
    Subspace::span(n1, imgs)
}
