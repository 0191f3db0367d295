use num_traits::Zero;

use super::algebra::ArtinAlgebra;
use crate::error::{Error, Result};
use crate::linalg::subspace::unit;
use crate::linalg::{Matrix, Scalar, Subspace};

/// A local 𝕂-algebra map, stored as its matrix on the bases of the maximal
/// ideals (`target.dim_m() x source.dim_m()`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: ArtinAlgebra,
    target: ArtinAlgebra,
    matrix: Matrix,
}

impl AlgebraMorphism {
    pub fn new(source: ArtinAlgebra, target: ArtinAlgebra, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.dim_m() || matrix.cols() != source.dim_m() {
            return Err(Error::Shape(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim_m(),
                source.dim_m()
            )));
        }
        let f = AlgebraMorphism {
            source,
            target,
            matrix,
        };
        let n = f.source.dim_m();
        for a in 0..n {
            for b in a..n {
                let lhs = f.apply(&f.source.mul(&unit(n, a), &unit(n, b)))?;
                let rhs = f.target.mul(&f.apply(&unit(n, a))?, &f.apply(&unit(n, b))?);
                if lhs != rhs {
                    return Err(Error::InvalidMorphism(format!(
                        "not multiplicative on ({}, {})",
                        f.source.labels()[a],
                        f.source.labels()[b]
                    )));
                }
            }
        }
        Ok(f)
    }

    pub fn identity(a: &ArtinAlgebra) -> Self {
        AlgebraMorphism {
            source: a.clone(),
            target: a.clone(),
            matrix: Matrix::identity(a.dim_m()),
        }
    }

    /// The unique map to the residue field.
    pub fn to_residue_field(a: &ArtinAlgebra) -> Self {
        AlgebraMorphism {
            source: a.clone(),
            target: residue_field(),
            matrix: Matrix::zeros(0, a.dim_m()),
        }
    }

    pub fn source(&self) -> &ArtinAlgebra {
        &self.source
    }

    pub fn target(&self) -> &ArtinAlgebra {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if first.target != self.source {
            return Err(Error::InvalidMorphism(
                "composition of non-composable maps".into(),
            ));
        }
        Ok(AlgebraMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix)?,
        })
    }

    pub fn kernel(&self) -> Subspace {
        self.matrix.kernel()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim_m()
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim_m()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_surjective() && self.is_injective()
    }
}

/// 𝕂 itself, with `m = 0`.
pub fn residue_field() -> ArtinAlgebra {
    ArtinAlgebra::from_table("𝕂", Vec::new(), Vec::new()).expect("zero algebra")
}

/// `B ×_A C` with its two projections.
#[derive(Clone, Debug)]
pub struct FibredProduct {
    pub algebra: ArtinAlgebra,
    pub p1: AlgebraMorphism,
    pub p2: AlgebraMorphism,
    pub f: AlgebraMorphism,
    pub g: AlgebraMorphism,
    /// Basis of `m_P` as vectors in `m_B ⊕ m_C`.
    embedding: Subspace,
}

/// Equalizer of `f: B → A` and `g: C → A` computed as the kernel of `[F | -G]`.
pub fn fibred_product(f: &AlgebraMorphism, g: &AlgebraMorphism) -> Result<FibredProduct> {
    if f.target != g.target {
        return Err(Error::InvalidMorphism(
            "fibred product of maps with different targets".into(),
        ));
    }
    let (b, c) = (f.source(), g.source());
    let (nb, nc) = (b.dim_m(), c.dim_m());
    let minus_g = g.matrix.scale(&-Scalar::from_integer(1.into()));
    let k = f.matrix.hstack(&minus_g)?.kernel();
    let n = k.dim();
    let split = |v: &[Scalar]| (v[..nb].to_vec(), v[nb..].to_vec());
    let mut table = Vec::with_capacity(n * n);
    for u in k.basis() {
        for w in k.basis() {
            let (ub, uc) = split(u);
            let (wb, wc) = split(w);
            let mut prod = b.mul(&ub, &wb);
            prod.extend(c.mul(&uc, &wc));
            table.push(k.coords(&prod).ok_or_else(|| {
                Error::Internal("fibred product is not closed under multiplication".into())
            })?);
        }
    }
    let labels = k
        .basis()
        .iter()
        .map(|v| {
            let (vb, vc) = split(v);
            format!("({},{})", describe(b, &vb), describe(c, &vc))
        })
        .collect();
    let algebra = ArtinAlgebra::from_table(
        format!("{}×_{}{}", b.name(), f.target().name(), c.name()),
        labels,
        table,
    )?;
    let mut m1 = Matrix::zeros(nb, n);
    let mut m2 = Matrix::zeros(nc, n);
    for (col, v) in k.basis().iter().enumerate() {
        for (r, e) in v[..nb].iter().enumerate() {
            m1.set(r, col, e.clone());
        }
        for (r, e) in v[nb..nb + nc].iter().enumerate() {
            m2.set(r, col, e.clone());
        }
    }
    let p1 = AlgebraMorphism::new(algebra.clone(), b.clone(), m1)?;
    let p2 = AlgebraMorphism::new(algebra.clone(), c.clone(), m2)?;
    Ok(FibredProduct {
        algebra,
        p1,
        p2,
        f: f.clone(),
        g: g.clone(),
        embedding: k,
    })
}

impl FibredProduct {
    /// The element of `m_P` with components `(b, c)`, if `f(b) = g(c)`.
    pub fn pair(&self, b: &[Scalar], c: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut v = b.to_vec();
        v.extend_from_slice(c);
        self.embedding.coords(&v)
    }

    /// The unique `w: D → P` with `p1 w = u` and `p2 w = v`.
    pub fn mediating(&self, u: &AlgebraMorphism, v: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if u.source != v.source || u.target != *self.p1.target() || v.target != *self.p2.target() {
            return Err(Error::InvalidMorphism(
                "cone does not match the fibred product".into(),
            ));
        }
        if self.f.matrix.mul(&u.matrix)? != self.g.matrix.mul(&v.matrix)? {
            return Err(Error::InvalidMorphism("cone does not commute".into()));
        }
        let d = u.source.dim_m();
        let mut w = Matrix::zeros(self.algebra.dim_m(), d);
        for e in 0..d {
            let x = unit(d, e);
            let coords = self
                .pair(&u.apply(&x)?, &v.apply(&x)?)
                .ok_or_else(|| Error::Internal("cone leaves the equalizer".into()))?;
            for (r, c) in coords.into_iter().enumerate() {
                w.set(r, e, c);
            }
        }
        AlgebraMorphism::new(u.source.clone(), self.algebra.clone(), w)
    }
}

fn describe(a: &ArtinAlgebra, v: &[Scalar]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let l = &a.labels()[i];
            if *c == Scalar::from_integer(1.into()) {
                l.clone()
            } else {
                format!("{}{}", crate::linalg::scalar::format_scalar(c), l)
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}
