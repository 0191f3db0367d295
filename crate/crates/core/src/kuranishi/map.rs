use super::split::HodgeSplit;
use crate::artin::ArtinAlgebra;
use crate::dgla::Dgla;
use crate::error::{Error, Result};
use crate::gauge::{exp_action, gauge_bch};
use crate::linalg::scalar::ratio;
use crate::linalg::Matrix;
use crate::mc::equation::require_degree;
use crate::mc::{mc_check, TensorDgla, TensorElement};

/// A Hodge split together with `L⊗m_A`.
#[derive(Clone, Debug)]
pub struct Kuranishi {
    pub split: HodgeSplit,
    pub t: TensorDgla,
}

impl Kuranishi {
    pub fn new(l: &Dgla, a: &ArtinAlgebra) -> Result<Self> {
        Ok(Kuranishi {
            split: HodgeSplit::new(l)?,
            t: TensorDgla::new(l, a)?,
        })
    }

    pub fn with_split(split: &HodgeSplit, a: &ArtinAlgebra) -> Result<Self> {
        Ok(Kuranishi {
            t: TensorDgla::new(split.dgla(), a)?,
            split: split.clone(),
        })
    }

    fn lin(&self, x: &TensorElement, m: &Matrix, degree: i32) -> Result<TensorElement> {
        self.t.map_base(x, m, &self.t, degree)
    }

    /// `(δ ⊗ 1)(x)`.
    pub fn delta(&self, x: &TensorElement) -> Result<TensorElement> {
        self.lin(x, self.split.delta(x.degree)?, x.degree - 1)
    }

    /// `(H ⊗ 1)(x)`.
    pub fn harmonic(&self, x: &TensorElement) -> Result<TensorElement> {
        self.lin(x, self.split.h(x.degree)?, x.degree)
    }

    /// `F(x) = x + ½δ[x,x]`.
    pub fn f(&self, x: &TensorElement) -> Result<TensorElement> {
        require_degree(x, 1)?;
        let sq = self.t.bracket(x, x)?;
        Ok(x.add(&self.delta(&sq)?.scale(&ratio(1, 2))))
    }

    /// The fixed point of `x ↦ y − ½δ[x,x]`, reached after at most the
    /// nilpotency index many steps; `F(x) = y` is certified.
    pub fn f_inverse(&self, y: &TensorElement) -> Result<TensorElement> {
        require_degree(y, 1)?;
        let mut x = y.clone();
        for _ in 0..=self.t.ring().nilpotency_index() {
            let sq = self.t.bracket(&x, &x)?;
            let next = y.sub(&self.delta(&sq)?.scale(&ratio(1, 2)));
            if next == x {
                break;
            }
            x = next;
        }
        if self.f(&x)? != *y {
            return Err(Error::Internal("F⁻¹ did not converge".into()));
        }
        Ok(x)
    }

    /// Whether every `m`-coefficient slice of `x` lies in the subspace.
    fn supported_in(&self, x: &TensorElement, s: &crate::linalg::Subspace) -> bool {
        let n = self.t.ring().dim_m();
        let dl = self.t.base().dim(x.degree);
        (0..n).all(|al| {
            let v: Vec<_> = (0..dl).map(|k| x.coeffs[k * n + al].clone()).collect();
            s.contains(&v)
        })
    }

    pub fn in_harmonic(&self, x: &TensorElement) -> Result<bool> {
        Ok(self.supported_in(x, &self.split.degree(x.degree)?.h))
    }

    /// `H[F⁻¹x, F⁻¹x] = 0` for `x ∈ H¹⊗m_A`.
    pub fn kur_membership(&self, x: &TensorElement) -> Result<bool> {
        require_degree(x, 1)?;
        if !self.in_harmonic(x)? {
            return Err(Error::Precondition("element is not supported on H¹".into()));
        }
        let z = self.f_inverse(x)?;
        Ok(self.harmonic(&self.t.bracket(&z, &z)?)?.is_zero())
    }

    pub fn mc_to_kur(&self, x: &TensorElement) -> Result<TensorElement> {
        if !mc_check(&self.t, x)? {
            return Err(Error::NotMaurerCartan(self.t.describe(x)));
        }
        if !self.delta(x)?.is_zero() {
            return Err(Error::Precondition("δx ≠ 0".into()));
        }
        let y = self.f(x)?;
        if !self.in_harmonic(&y)? || !self.kur_membership(&y)? {
            return Err(Error::Internal(
                "F(x) is not in the Kuranishi functor".into(),
            ));
        }
        Ok(y)
    }

    pub fn kur_to_mc(&self, y: &TensorElement) -> Result<TensorElement> {
        if !self.kur_membership(y)? {
            return Err(Error::Precondition(
                "element is not in the Kuranishi functor".into(),
            ));
        }
        let x = self.f_inverse(y)?;
        if !mc_check(&self.t, &x)? || !self.delta(&x)?.is_zero() {
            return Err(Error::Internal(
                "F⁻¹(y) is not a normalized Maurer-Cartan element".into(),
            ));
        }
        Ok(x)
    }

    /// `(g, x′)` with `e^g * x = x′` and `δx′ = 0`, obtained by repeatedly
    /// applying the gauge `c = δx` (which removes the lowest-order `B¹`
    /// component) and composing the gauges.
    pub fn gauge_normalize(&self, x: &TensorElement) -> Result<(TensorElement, TensorElement)> {
        if !mc_check(&self.t, x)? {
            return Err(Error::NotMaurerCartan(self.t.describe(x)));
        }
        let mut g = self.t.zero(0);
        let mut cur = x.clone();
        for _ in 0..=self.t.ring().nilpotency_index() {
            let c = self.delta(&cur)?;
            if c.is_zero() {
                break;
            }
            cur = exp_action(&self.t, &c, &cur)?;
            g = gauge_bch(&self.t, &c, &g)?;
        }
        if !self.delta(&cur)?.is_zero() {
            return Err(Error::Internal("normalization did not terminate".into()));
        }
        if exp_action(&self.t, &g, x)? != cur {
            return Err(Error::Internal(
                "composed normalizing gauge is wrong".into(),
            ));
        }
        Ok((g, cur))
    }

    /// Runs the induction showing that `y = c·δ[y,x]` forces `y = 0`: if `y`
    /// has coefficients in `m^k` then so does `[y,x]` in `m^{k+1}`. Returns
    /// the levels visited, or an error if the relation does not hold.
    pub fn fixed_point_levels(
        &self,
        x: &TensorElement,
        y: &TensorElement,
        c: &crate::linalg::Scalar,
    ) -> Result<usize> {
        let rhs = self.delta(&self.t.bracket(y, x)?)?.scale(c);
        if rhs != *y {
            return Err(Error::Precondition("y ≠ c·δ[y,x]".into()));
        }
        let ring = self.t.ring();
        let mut k = 1;
        while k < ring.nilpotency_index() {
            let next = ring.power(k + 1);
            let img = self.delta(&self.t.bracket(y, x)?)?.scale(c);
            if !self.coefficients_in(&img, &next) {
                return Err(Error::Internal(
                    "bracket does not raise the filtration".into(),
                ));
            }
            k += 1;
        }
        if !y.is_zero() || !self.coefficients_in(y, &ring.power(k)) {
            return Err(Error::Internal("fixed point is not zero".into()));
        }
        Ok(k)
    }

    fn coefficients_in(&self, x: &TensorElement, s: &crate::linalg::Subspace) -> bool {
        let n = self.t.ring().dim_m();
        (0..self.t.base().dim(x.degree)).all(|k| s.contains(&x.coeffs[k * n..(k + 1) * n]))
    }
}
