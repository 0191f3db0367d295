use num_traits::Zero;

use super::element::{TensorDgla, TensorElement};
use super::equation::{mc_check, mc_residual, require_degree};
use crate::artin::SmallExtension;
use crate::dgla::Dgla;
use crate::error::{Error, Result};
use crate::linalg::scalar::{int, ratio};
use crate::linalg::{Matrix, Scalar};

/// A class in `H²(L) ⊗ M`: `coords[r][μ]` is the coefficient of
/// `[h_r] ⊗ m_μ` with `h_r` the chosen basis of `H²` and `m_μ` the basis of
/// the extension's ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionClass {
    pub coords: Vec<Vec<Scalar>>,
    /// The cocycle `dx̃ + ½[x̃,x̃] ∈ L²⊗M` for the section lift.
    pub cocycle: TensorElement,
}

impl ObstructionClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().flatten().all(Zero::is_zero)
    }

    /// `(Id ⊗ φ)` for a linear map `φ: M → M'` given as a matrix.
    pub fn transform(&self, phi: &Matrix) -> Result<Vec<Vec<Scalar>>> {
        self.coords.iter().map(|row| phi.mul_vec(row)).collect()
    }
}

/// `L⊗m_A` and `L⊗m_B` for a small extension `B → A`.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pub ext: SmallExtension,
    pub over_a: TensorDgla,
    pub over_b: TensorDgla,
}

impl LiftingProblem {
    pub fn new(l: &Dgla, ext: &SmallExtension) -> Result<Self> {
        Ok(LiftingProblem {
            ext: ext.clone(),
            over_a: TensorDgla::new(l, &ext.quotient)?,
            over_b: TensorDgla::new(l, &ext.total)?,
        })
    }

    pub fn base(&self) -> &Dgla {
        self.over_a.base()
    }

    /// Lift along the section of the extension.
    pub fn section_lift(&self, x: &TensorElement) -> Result<TensorElement> {
        self.over_a
            .map_coefficients(x, &self.over_b, |v| self.ext.lift(v))
    }

    pub fn project(&self, y: &TensorElement) -> Result<TensorElement> {
        self.over_b.map_ring(y, &self.ext.projection, &self.over_a)
    }

    /// Components `h_μ ∈ L^deg` of an element of `L^deg ⊗ M`.
    pub fn ideal_components(&self, y: &TensorElement) -> Result<Vec<Vec<Scalar>>> {
        self.over_b
            .split_over(y, &self.ext.ideal)
            .ok_or_else(|| Error::Internal("element does not lie in L⊗M".into()))
    }

    pub fn from_ideal_components(
        &self,
        degree: i32,
        comps: &[Vec<Scalar>],
    ) -> Result<TensorElement> {
        self.over_b.from_components(degree, comps, &self.ext.ideal)
    }

    fn class_of_lift(&self, lift: &TensorElement) -> Result<ObstructionClass> {
        let h = mc_residual(&self.over_b, lift)?;
        let comps = self.ideal_components(&h)?;
        let l = self.base();
        for c in &comps {
            if !l.can_differentiate(2) {
                return Err(Error::Window(
                    "the differential out of degree 2 is unknown; cannot certify dh = 0".into(),
                ));
            }
            if !l.d(2, c)?.iter().all(Zero::is_zero) {
                return Err(Error::Internal("obstruction cocycle is not closed".into()));
            }
        }
        let h2 = l.cohomology_degree(2)?;
        let per_mu: Vec<Vec<Scalar>> = comps
            .iter()
            .map(|c| h2.class_of(c))
            .collect::<Result<_>>()?;
        let coords = (0..h2.dim_h())
            .map(|r| per_mu.iter().map(|v| v[r].clone()).collect())
            .collect();
        Ok(ObstructionClass { coords, cocycle: h })
    }

    /// A fixed nonzero element of `L¹⊗M`.
    fn perturbation(&self) -> Result<TensorElement> {
        let d1 = self.base().dim(1);
        let mut comps = vec![vec![Scalar::zero(); d1]; self.ext.ideal_dim()];
        if let Some(first) = comps.first_mut() {
            for (k, c) in first.iter_mut().enumerate() {
                *c = int(k as i64 + 1);
            }
        }
        if let Some(last) = comps.last_mut() {
            for (k, c) in last.iter_mut().enumerate() {
                *c += ratio(1, k as i64 + 2);
            }
        }
        self.from_ideal_components(1, &comps)
    }

    /// The class of `dx̃ + ½[x̃,x̃]`, recomputed for a second lift to
    /// certify independence of the lift.
    pub fn obstruction(&self, x: &TensorElement) -> Result<ObstructionClass> {
        require_degree(x, 1)?;
        if !mc_check(&self.over_a, x)? {
            return Err(Error::NotMaurerCartan(self.over_a.describe(x)));
        }
        let lift = self.section_lift(x)?;
        let class = self.class_of_lift(&lift)?;
        let other = self.class_of_lift(&lift.add(&self.perturbation()?))?;
        if other.coords != class.coords {
            return Err(Error::Internal("obstruction depends on the lift".into()));
        }
        Ok(class)
    }

    /// A Maurer–Cartan lift, obtained by solving `dz = −h` in `L¹⊗M`.
    pub fn lift(&self, x: &TensorElement) -> Result<Option<TensorElement>> {
        let class = self.obstruction(x)?;
        if !class.is_zero() {
            return Ok(None);
        }
        let l = self.base();
        let comps = self.ideal_components(&class.cocycle)?;
        let d1 = l
            .diff_block(1)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(l.dim(2), l.dim(1)));
        let mut zs = Vec::with_capacity(comps.len());
        for h in &comps {
            let rhs: Vec<Scalar> = h.iter().map(|c| -c).collect();
            match d1.solve_affine(&rhs)? {
                Some(s) => zs.push(s.particular),
                None => return Err(Error::Internal("exact cocycle without a primitive".into())),
            }
        }
        let y = self
            .section_lift(x)?
            .add(&self.from_ideal_components(1, &zs)?);
        if !mc_check(&self.over_b, &y)? {
            return Err(Error::Internal("computed lift is not Maurer-Cartan".into()));
        }
        Ok(Some(y))
    }

    /// All lifts `x̃ + z`, `z ∈ L¹⊗M`, by evaluating the residual on a basis
    /// of perturbations and solving the resulting affine system. The
    /// quadratic part is measured rather than assumed to vanish.
    pub fn brute_force_lift(&self, x: &TensorElement) -> Result<Option<TensorElement>> {
        let base = self.section_lift(x)?;
        let d1 = self.base().dim(1);
        let mdim = self.ext.ideal_dim();
        let basis: Vec<TensorElement> = (0..d1 * mdim)
            .map(|i| {
                let mut comps = vec![vec![Scalar::zero(); d1]; mdim];
                comps[i / d1][i % d1] = int(1);
                self.from_ideal_components(1, &comps)
            })
            .collect::<Result<_>>()?;
        let r0 = mc_residual(&self.over_b, &base)?;
        let mut cols = Vec::with_capacity(basis.len());
        for b in &basis {
            cols.push(mc_residual(&self.over_b, &base.add(b))?.sub(&r0).coeffs);
        }
        for i in 0..basis.len() {
            for j in i..basis.len() {
                let both = mc_residual(&self.over_b, &base.add(&basis[i]).add(&basis[j]))?;
                let lin = r0
                    .coeffs
                    .iter()
                    .zip(&cols[i])
                    .zip(&cols[j])
                    .map(|((a, b), c)| a + b + c);
                if !both.coeffs.iter().zip(lin).all(|(x, y)| *x == y) {
                    return Err(Error::Internal("residual is not affine on L¹⊗M".into()));
                }
            }
        }
        let n = r0.coeffs.len();
        let a = if cols.is_empty() {
            Matrix::zeros(n, 0)
        } else {
            Matrix::from_cols(&cols, n)?
        };
        let rhs: Vec<Scalar> = r0.coeffs.iter().map(|c| -c).collect();
        let Some(sol) = a.solve_affine(&rhs)? else {
            return Ok(None);
        };
        let mut y = base;
        for (c, b) in sol.particular.iter().zip(&basis) {
            if !c.is_zero() {
                y = y.add(&b.scale(c));
            }
        }
        Ok(Some(y))
    }
}

pub fn obstruction_of_lift(
    l: &Dgla,
    x: &TensorElement,
    ext: &SmallExtension,
) -> Result<ObstructionClass> {
    LiftingProblem::new(l, ext)?.obstruction(x)
}

pub fn lift_through_extension(
    l: &Dgla,
    x: &TensorElement,
    ext: &SmallExtension,
) -> Result<Option<TensorElement>> {
    LiftingProblem::new(l, ext)?.lift(x)
}

/// Class of `½[ξ,ξ]` in `H²` for a cocycle `ξ ∈ Z¹`.
pub fn primary_obstruction(l: &Dgla, xi: &[Scalar]) -> Result<Vec<Scalar>> {
    let h1 = l.cohomology_degree(1)?;
    if xi.len() != l.dim(1) || !h1.z.contains(xi) {
        return Err(Error::Precondition(
            "primary obstruction needs a 1-cocycle".into(),
        ));
    }
    let sq = l.bracket(1, xi, 1, xi)?;
    let half: Vec<Scalar> = sq.iter().map(|c| c * ratio(1, 2)).collect();
    l.cohomology_degree(2)?.class_of(&half)
}
