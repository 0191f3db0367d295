use num_traits::Zero;

use crate::artin::{tensor_nilpotent, AlgebraMorphism, ArtinAlgebra};
use crate::dgla::Dgla;
use crate::error::{Error, Result};
use crate::linalg::scalar::format_scalar;
use crate::linalg::{vector, Matrix, Scalar, Subspace};

/// An element of `L^i ⊗ m_A`; the coefficient of `e_k ⊗ m_α` sits at
/// `k * dim m_A + α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElement {
    pub degree: i32,
    pub coeffs: Vec<Scalar>,
}

impl TensorElement {
    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.coeffs)
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        debug_assert_eq!(self.degree, other.degree);
        TensorElement {
            degree: self.degree,
            coeffs: vector::add(&self.coeffs, &other.coeffs),
        }
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        debug_assert_eq!(self.degree, other.degree);
        TensorElement {
            degree: self.degree,
            coeffs: vector::sub(&self.coeffs, &other.coeffs),
        }
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        TensorElement {
            degree: self.degree,
            coeffs: vector::scale(c, &self.coeffs),
        }
    }

    pub fn neg(&self) -> TensorElement {
        TensorElement {
            degree: self.degree,
            coeffs: vector::neg(&self.coeffs),
        }
    }
}

/// `L ⊗ m_A` together with the factors it was built from.
#[derive(Clone, Debug)]
pub struct TensorDgla {
    base: Dgla,
    ring: ArtinAlgebra,
    total: Dgla,
}

impl TensorDgla {
    pub fn new(base: &Dgla, ring: &ArtinAlgebra) -> Result<Self> {
        Ok(TensorDgla {
            base: base.clone(),
            ring: ring.clone(),
            total: tensor_nilpotent(base, ring)?,
        })
    }

    pub fn base(&self) -> &Dgla {
        &self.base
    }

    pub fn ring(&self) -> &ArtinAlgebra {
        &self.ring
    }

    pub fn total(&self) -> &Dgla {
        &self.total
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.total.dim(degree)
    }

    pub fn zero(&self, degree: i32) -> TensorElement {
        TensorElement {
            degree,
            coeffs: vector::zeros(self.dim(degree)),
        }
    }

    pub fn element(&self, degree: i32, coeffs: Vec<Scalar>) -> Result<TensorElement> {
        if coeffs.len() != self.dim(degree) {
            return Err(Error::Shape(format!(
                "element of degree {degree} needs {} coefficients, got {}",
                self.dim(degree),
                coeffs.len()
            )));
        }
        Ok(TensorElement { degree, coeffs })
    }

    /// `Σ c · (e ⊗ m)` by labels of `L` and of `m_A`.
    pub fn from_terms(&self, degree: i32, terms: &[(&str, &str, Scalar)]) -> Result<TensorElement> {
        let mut x = self.zero(degree);
        let n = self.ring.dim_m();
        for (l, m, c) in terms {
            let (d, k) = self
                .base
                .space()
                .find(l)
                .ok_or_else(|| Error::Parse(format!("unknown basis label {l:?}")))?;
            if d != degree {
                return Err(Error::Degree {
                    expected: degree,
                    found: d,
                });
            }
            let al = self
                .ring
                .labels()
                .iter()
                .position(|s| s == m)
                .ok_or_else(|| Error::Parse(format!("unknown ring basis label {m:?}")))?;
            x.coeffs[k * n + al] += c;
        }
        Ok(x)
    }

    /// `v ⊗ a` for `v ∈ L^degree`, `a ∈ m_A`.
    pub fn pure(&self, degree: i32, v: &[Scalar], a: &[Scalar]) -> Result<TensorElement> {
        if v.len() != self.base.dim(degree) || a.len() != self.ring.dim_m() {
            return Err(Error::Shape("tensor factor of the wrong length".into()));
        }
        let mut coeffs = Vec::with_capacity(self.dim(degree));
        for vk in v {
            for aa in a {
                coeffs.push(vk * aa);
            }
        }
        Ok(TensorElement { degree, coeffs })
    }

    pub fn d(&self, x: &TensorElement) -> Result<TensorElement> {
        Ok(TensorElement {
            degree: x.degree + 1,
            coeffs: self.total.d(x.degree, &x.coeffs)?,
        })
    }

    pub fn bracket(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
        Ok(TensorElement {
            degree: x.degree + y.degree,
            coeffs: self
                .total
                .bracket(x.degree, &x.coeffs, y.degree, &y.coeffs)?,
        })
    }

    /// The `m_A`-coefficient of `e_k`.
    pub fn coefficient(&self, x: &TensorElement, k: usize) -> Vec<Scalar> {
        let n = self.ring.dim_m();
        x.coeffs[k * n..(k + 1) * n].to_vec()
    }

    /// Applies a linear map on `m`-coordinates to every coefficient.
    pub fn map_coefficients(
        &self,
        x: &TensorElement,
        target: &TensorDgla,
        f: impl Fn(&[Scalar]) -> Result<Vec<Scalar>>,
    ) -> Result<TensorElement> {
        let mut coeffs = Vec::with_capacity(target.dim(x.degree));
        for k in 0..self.base.dim(x.degree) {
            let img = f(&self.coefficient(x, k))?;
            if img.len() != target.ring.dim_m() {
                return Err(Error::Shape("coefficient map has the wrong target".into()));
            }
            coeffs.extend(img);
        }
        target.element(x.degree, coeffs)
    }

    /// `(Id ⊗ f)(x)`.
    pub fn map_ring(
        &self,
        x: &TensorElement,
        f: &AlgebraMorphism,
        target: &TensorDgla,
    ) -> Result<TensorElement> {
        if f.source() != &self.ring || f.target() != &target.ring {
            return Err(Error::InvalidMorphism(
                "ring map does not match the tensor factors".into(),
            ));
        }
        self.map_coefficients(x, target, |v| f.apply(v))
    }

    /// `(φ ⊗ 1)(x)` for a linear map `φ: L^i → N^j` of the first factor,
    /// landing in `target` (which must share the ring).
    pub fn map_base(
        &self,
        x: &TensorElement,
        phi: &Matrix,
        target: &TensorDgla,
        degree: i32,
    ) -> Result<TensorElement> {
        let n = self.ring.dim_m();
        if phi.cols() != self.base.dim(x.degree)
            || phi.rows() != target.base.dim(degree)
            || target.ring.dim_m() != n
        {
            return Err(Error::Shape(
                "linear map does not fit the tensor factors".into(),
            ));
        }
        let mut out = vector::zeros(phi.rows() * n);
        for r in 0..phi.rows() {
            for k in 0..phi.cols() {
                let c = phi.get(r, k);
                if c.is_zero() {
                    continue;
                }
                for al in 0..n {
                    let v = &x.coeffs[k * n + al];
                    if !v.is_zero() {
                        out[r * n + al] += c * v;
                    }
                }
            }
        }
        target.element(degree, out)
    }

    /// Writes `x = Σ_μ h_μ ⊗ m_μ` over a basis of `ideal`; `None` when some
    /// coefficient leaves the ideal.
    pub fn split_over(&self, x: &TensorElement, ideal: &Subspace) -> Option<Vec<Vec<Scalar>>> {
        let dl = self.base.dim(x.degree);
        let mut comps = vec![vector::zeros(dl); ideal.dim()];
        for k in 0..dl {
            let c = ideal.coords(&self.coefficient(x, k))?;
            for (comp, v) in comps.iter_mut().zip(c) {
                comp[k] = v;
            }
        }
        Some(comps)
    }

    /// Inverse of [`split_over`](Self::split_over).
    pub fn from_components(
        &self,
        degree: i32,
        comps: &[Vec<Scalar>],
        ideal: &Subspace,
    ) -> Result<TensorElement> {
        let mut x = self.zero(degree);
        for (h, m) in comps.iter().zip(ideal.basis()) {
            x = x.add(&self.pure(degree, h, m)?);
        }
        Ok(x)
    }

    pub fn describe(&self, x: &TensorElement) -> String {
        let n = self.ring.dim_m();
        let terms: Vec<String> = x
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                format!(
                    "{}·{}⊗{}",
                    format_scalar(c),
                    self.base.label(x.degree, i / n),
                    self.ring.labels()[i % n]
                )
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}
