use serde::Serialize;

use super::element::{TensorDgla, TensorElement};
use super::equation::{mc_check, mc_residual};
use super::obstruction::LiftingProblem;
use crate::artin::{
    small_extension_tower, ArtinAlgebra, ExtensionMorphism, FibredProduct, SmallExtension,
};
use crate::dgla::Dgla;
use crate::error::{Error, Result};
use crate::linalg::{vector, Scalar, Subspace};
use crate::rng::Lcg;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessReport {
    pub bracket_z1_in_b2: bool,
    pub bracket_z1_zero: bool,
    pub h2_zero: bool,
}

pub fn smoothness_diagnostics(l: &Dgla) -> Result<SmoothnessReport> {
    let z1 = l.cohomology_degree(1)?.z;
    let c2 = l.cohomology_degree(2)?;
    let mut in_b2 = true;
    let mut zero = true;
    for (i, a) in z1.basis().iter().enumerate() {
        for b in &z1.basis()[i..] {
            let br = l.bracket(1, a, 1, b)?;
            if !vector::is_zero(&br) {
                zero = false;
            }
            if !c2.b.contains(&br) {
                in_b2 = false;
            }
        }
    }
    Ok(SmoothnessReport {
        bracket_z1_in_b2: in_b2,
        bracket_z1_zero: zero,
        h2_zero: c2.dim_h() == 0,
    })
}

/// A seeded Maurer–Cartan element over `A`, built by lifting through the
/// small-extension tower with random tangent perturbations at every step.
/// Falls back to zero when every attempt runs into an obstruction.
pub fn sample_mc(l: &Dgla, a: &ArtinAlgebra, rng: &mut Lcg) -> Result<TensorElement> {
    McSampler::new(l, a)?.sample(rng)
}

/// `sample_mc` with the extension tower built once.
#[derive(Clone, Debug)]
pub struct McSampler {
    problems: Vec<LiftingProblem>,
    start: TensorElement,
    fallback: TensorElement,
    z1: Subspace,
    dim1: usize,
}

impl McSampler {
    pub fn new(l: &Dgla, a: &ArtinAlgebra) -> Result<Self> {
        let problems: Vec<LiftingProblem> = small_extension_tower(a)?
            .iter()
            .rev()
            .map(|e| LiftingProblem::new(l, e))
            .collect::<Result<_>>()?;
        Ok(McSampler {
            problems,
            start: TensorDgla::new(l, &crate::artin::residue_field())?.zero(1),
            fallback: TensorDgla::new(l, a)?.zero(1),
            z1: l.cohomology_degree(1)?.z,
            dim1: l.dim(1),
        })
    }

    /// Lifts step by step up the tower, adding a random cocycle in each
    /// ideal; obstructed draws are retried.
    pub fn sample(&self, rng: &mut Lcg) -> Result<TensorElement> {
        'attempt: for _ in 0..16 {
            let mut x = self.start.clone();
            for p in &self.problems {
                let Some(y) = p.lift(&x)? else {
                    continue 'attempt;
                };
                let comps: Vec<Vec<Scalar>> = (0..p.ext.ideal_dim())
                    .map(|_| {
                        vector::combine(&rng.vector(self.z1.dim()), self.z1.basis(), self.dim1)
                    })
                    .collect();
                x = y.add(&p.from_ideal_components(1, &comps)?);
            }
            return Ok(x);
        }
        Ok(self.fallback.clone())
    }
}

/// A seeded element of `L^degree ⊗ m_A`.
pub fn sample_element(t: &TensorDgla, degree: i32, rng: &mut Lcg) -> TensorElement {
    TensorElement {
        degree,
        coeffs: rng.vector(t.dim(degree)),
    }
}

/// Checks that `o_{e₂}(α(x)) = (Id⊗α_M) o_{e₁}(x)`.
pub fn base_change_holds(l: &Dgla, m: &ExtensionMorphism, x: &TensorElement) -> Result<bool> {
    let p1 = LiftingProblem::new(l, &m.source)?;
    let p2 = LiftingProblem::new(l, &m.target)?;
    let o1 = p1.obstruction(x)?;
    let x2 = p1.over_a.map_ring(x, &m.quotient, &p2.over_a)?;
    let o2 = p2.obstruction(&x2)?;
    Ok(o2.coords == o1.transform(&m.on_ideal)?)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomogeneityReport {
    pub forward_checked: usize,
    pub backward_checked: usize,
    pub backward_skipped: usize,
    pub failures: Vec<String>,
}

impl HomogeneityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exact membership test of the bijection
/// `MC(B ×_A C) → MC(B) ×_{MC(A)} MC(C)` on seeded samples. The second map
/// must either land in 𝕂 or be a small extension.
pub fn homogeneity_check(
    l: &Dgla,
    fp: &FibredProduct,
    rng: &mut Lcg,
    samples: usize,
) -> Result<HomogeneityReport> {
    let tp = TensorDgla::new(l, &fp.algebra)?;
    let tb = TensorDgla::new(l, fp.p1.target())?;
    let tc = TensorDgla::new(l, fp.p2.target())?;
    let ta = TensorDgla::new(l, fp.f.target())?;
    let mut rep = HomogeneityReport::default();
    for s in 0..samples {
        let x = sample_mc(l, &fp.algebra, rng)?;
        let (xb, xc) = (tp.map_ring(&x, &fp.p1, &tb)?, tp.map_ring(&x, &fp.p2, &tc)?);
        if !mc_check(&tb, &xb)? || !mc_check(&tc, &xc)? {
            rep.failures.push(format!(
                "forward sample {s}: projection is not Maurer-Cartan"
            ));
        }
        if tb.map_ring(&xb, &fp.f, &ta)? != tc.map_ring(&xc, &fp.g, &ta)? {
            rep.failures
                .push(format!("forward sample {s}: images disagree over A"));
        }
        rep.forward_checked += 1;
    }
    let small = if fp.g.target().dim_m() == 0 {
        None
    } else {
        Some(SmallExtension::from_projection(fp.g.clone()).map_err(|_| {
            Error::Precondition("homogeneity check needs C → A small or A = 𝕂".into())
        })?)
    };
    for s in 0..samples {
        let y = sample_mc(l, fp.p1.target(), rng)?;
        let z = match &small {
            None => sample_mc(l, fp.p2.target(), rng)?,
            Some(e) => {
                let p = LiftingProblem::new(l, e)?;
                let base = tb.map_ring(&y, &fp.f, &ta)?;
                match p.lift(&base)? {
                    Some(z) => z,
                    None => {
                        rep.backward_skipped += 1;
                        continue;
                    }
                }
            }
        };
        let mut coeffs = Vec::with_capacity(tp.dim(1));
        for k in 0..l.dim(1) {
            let c = fp
                .pair(&tb.coefficient(&y, k), &tc.coefficient(&z, k))
                .ok_or_else(|| Error::Internal("pair does not lie in the fibred product".into()))?;
            coeffs.extend(c);
        }
        let x = tp.element(1, coeffs)?;
        if !mc_residual(&tp, &x)?.is_zero() {
            rep.failures.push(format!(
                "backward sample {s}: glued element is not Maurer-Cartan"
            ));
        }
        if tp.map_ring(&x, &fp.p1, &tb)? != y || tp.map_ring(&x, &fp.p2, &tc)? != z {
            rep.failures.push(format!(
                "backward sample {s}: glued element has wrong projections"
            ));
        }
        rep.backward_checked += 1;
    }
    Ok(rep)
}
