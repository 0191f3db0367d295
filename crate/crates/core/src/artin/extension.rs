use num_traits::Zero;

use super::algebra::ArtinAlgebra;
use super::morphism::AlgebraMorphism;
use crate::error::{Error, Result};
use crate::linalg::subspace::unit;
use crate::linalg::{Matrix, Scalar, Subspace};

/// `0 → M → B → A → 0` with `m_B · M = 0`.
#[derive(Clone, Debug)]
pub struct SmallExtension {
    pub total: ArtinAlgebra,
    pub quotient: ArtinAlgebra,
    pub projection: AlgebraMorphism,
    /// `M` inside `m_B`.
    pub ideal: Subspace,
    /// A linear right inverse of the projection (`dim m_B x dim m_A`).
    pub section: Matrix,
}

impl SmallExtension {
    /// Wraps a surjection whose kernel is annihilated by `m_B`.
    pub fn from_projection(projection: AlgebraMorphism) -> Result<Self> {
        if !projection.is_surjective() {
            return Err(Error::Precondition("projection is not surjective".into()));
        }
        let total = projection.source().clone();
        let quotient = projection.target().clone();
        let ideal = projection.kernel();
        check_small(&total, &ideal)?;
        let (nb, na) = (total.dim_m(), quotient.dim_m());
        let mut section = Matrix::zeros(nb, na);
        for i in 0..na {
            let s = projection
                .matrix()
                .solve_affine(&unit(na, i))?
                .ok_or_else(|| Error::Internal("surjection without preimage".into()))?;
            for (r, c) in s.particular.into_iter().enumerate() {
                section.set(r, i, c);
            }
        }
        Ok(SmallExtension {
            total,
            quotient,
            projection,
            ideal,
            section,
        })
    }

    /// `B → B/M`; the quotient keeps the labels of the non-pivot basis
    /// vectors of `M`'s reduced echelon form, and the section is their
    /// inclusion.
    pub fn quotient_by(total: &ArtinAlgebra, ideal: &Subspace) -> Result<Self> {
        check_small(total, ideal)?;
        let nb = total.dim_m();
        let rows = ideal.rref_basis();
        let pivots: Vec<usize> = rows
            .iter()
            .map(|r| r.iter().position(|c| !c.is_zero()).expect("nonzero row"))
            .collect();
        let kept: Vec<usize> = (0..nb).filter(|j| !pivots.contains(j)).collect();
        let na = kept.len();
        let mut proj = Matrix::zeros(na, nb);
        for (q, &j) in kept.iter().enumerate() {
            proj.set(q, j, Scalar::from_integer(1.into()));
        }
        for (r, &p) in rows.iter().zip(&pivots) {
            for (q, &j) in kept.iter().enumerate() {
                if !r[j].is_zero() {
                    proj.set(q, p, -r[j].clone());
                }
            }
        }
        let mut section = Matrix::zeros(nb, na);
        for (q, &j) in kept.iter().enumerate() {
            section.set(j, q, Scalar::from_integer(1.into()));
        }
        let mut table = Vec::with_capacity(na * na);
        for &a in &kept {
            for &b in &kept {
                table.push(proj.mul_vec(&total.mul(&unit(nb, a), &unit(nb, b)))?);
            }
        }
        let labels = kept.iter().map(|&j| total.labels()[j].clone()).collect();
        let quotient = ArtinAlgebra::from_table(format!("{}/M", total.name()), labels, table)?;
        let projection = AlgebraMorphism::new(total.clone(), quotient.clone(), proj)?;
        Ok(SmallExtension {
            total: total.clone(),
            quotient,
            projection,
            ideal: ideal.clone(),
            section,
        })
    }

    /// Lifts coefficients in `m_A` to `m_B` along the section.
    pub fn lift(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.section.mul_vec(v)
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal.dim()
    }
}

fn check_small(total: &ArtinAlgebra, ideal: &Subspace) -> Result<()> {
    let n = total.dim_m();
    if ideal.ambient() != n {
        return Err(Error::Shape("ideal lives in a different space".into()));
    }
    for v in ideal.basis() {
        for b in 0..n {
            if total.mul(v, &unit(n, b)).iter().any(|c| !c.is_zero()) {
                return Err(Error::Precondition(
                    "extension is not small: the kernel is not annihilated by the maximal ideal"
                        .into(),
                ));
            }
        }
    }
    Ok(())
}

/// `A = A_n → A_{n-1} → … → 𝕂`, each step with a one-dimensional kernel
/// spanned by the last reduced echelon vector of the deepest nonzero power
/// of the maximal ideal. The first entry is the top step.
pub fn small_extension_tower(a: &ArtinAlgebra) -> Result<Vec<SmallExtension>> {
    let mut out = Vec::new();
    let mut cur = a.clone();
    while cur.dim_m() > 0 {
        let k = cur.nilpotency_index() - 1;
        let deepest = cur.power(k);
        let v = deepest
            .rref_basis()
            .pop()
            .ok_or_else(|| Error::Internal("empty power of the maximal ideal".into()))?;
        let step = SmallExtension::quotient_by(&cur, &Subspace::span(cur.dim_m(), [v])?)?;
        cur = step.quotient.clone();
        out.push(step);
    }
    Ok(out)
}

/// A map of small extensions induced by `α: B₁ → B₂` with `α(M₁) ⊆ M₂`.
#[derive(Clone, Debug)]
pub struct ExtensionMorphism {
    pub source: SmallExtension,
    pub target: SmallExtension,
    pub total: AlgebraMorphism,
    pub quotient: AlgebraMorphism,
    /// `α_M` in the ideal bases (`dim M₂ x dim M₁`).
    pub on_ideal: Matrix,
}

impl ExtensionMorphism {
    pub fn new(
        source: &SmallExtension,
        target: &SmallExtension,
        alpha: AlgebraMorphism,
    ) -> Result<Self> {
        if alpha.source() != &source.total || alpha.target() != &target.total {
            return Err(Error::InvalidMorphism(
                "map does not connect the two extensions".into(),
            ));
        }
        let mut cols = Vec::new();
        for m in source.ideal.basis() {
            let img = alpha.apply(m)?;
            cols.push(target.ideal.coords(&img).ok_or_else(|| {
                Error::InvalidMorphism("the map does not send ideal into ideal".into())
            })?);
        }
        let on_ideal = if cols.is_empty() {
            Matrix::zeros(target.ideal_dim(), 0)
        } else {
            Matrix::from_cols(&cols, target.ideal_dim())?
        };
        let qa = target
            .projection
            .matrix()
            .mul(alpha.matrix())?
            .mul(&source.section)?;
        let quotient = AlgebraMorphism::new(source.quotient.clone(), target.quotient.clone(), qa)?;
        let lhs = target.projection.matrix().mul(alpha.matrix())?;
        let rhs = quotient.matrix().mul(source.projection.matrix())?;
        if lhs != rhs {
            return Err(Error::InvalidMorphism(
                "square of extensions does not commute".into(),
            ));
        }
        Ok(ExtensionMorphism {
            source: source.clone(),
            target: target.clone(),
            total: alpha,
            quotient,
            on_ideal,
        })
    }
}
