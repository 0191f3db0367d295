use crate::error::{Error, Result};
use crate::linalg::scalar::{int, ratio};
use crate::linalg::Scalar;
use crate::mc::{TensorDgla, TensorElement};

/// `Σ_k c_k t^k` with every `c_k ∈ L^degree ⊗ m_A`. Trailing zero
/// coefficients are dropped, so the zero path has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyPath {
    pub degree: i32,
    pub coeffs: Vec<TensorElement>,
}

impl PolyPath {
    /// Highest power of `t` present; `None` for the zero path.
    pub fn t_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Option<&TensorElement> {
        self.coeffs.get(k)
    }
}

/// Polynomial paths in `L ⊗ m_A` with powers of `t` up to `cap`.
#[derive(Clone, Debug)]
pub struct PathSpace {
    pub t: TensorDgla,
    pub cap: usize,
}

impl PathSpace {
    pub fn new(t: &TensorDgla, cap: usize) -> Self {
        PathSpace { t: t.clone(), cap }
    }

    /// A cap large enough for paths of input degree `d` pushed through the
    /// exponential, the gauge ODE and the lifting corrections.
    pub fn default_cap(t: &TensorDgla, d: usize) -> usize {
        (t.ring().nilpotency_index() + 1) * (d + 1) + 1
    }

    pub fn zero(&self, degree: i32) -> PolyPath {
        PolyPath {
            degree,
            coeffs: Vec::new(),
        }
    }

    /// Normalizes and checks the cap.
    pub fn path(&self, degree: i32, mut coeffs: Vec<TensorElement>) -> Result<PolyPath> {
        for c in &coeffs {
            if c.degree != degree || c.coeffs.len() != self.t.dim(degree) {
                return Err(Error::Shape(format!(
                    "path coefficient does not lie in degree {degree}"
                )));
            }
        }
        while coeffs.last().is_some_and(TensorElement::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() > self.cap + 1 {
            return Err(Error::CapOverflow(format!(
                "path of t-degree {} exceeds the cap {}",
                coeffs.len() - 1,
                self.cap
            )));
        }
        Ok(PolyPath { degree, coeffs })
    }

    pub fn constant(&self, x: &TensorElement) -> Result<PolyPath> {
        self.path(x.degree, vec![x.clone()])
    }

    /// `t^k · x`.
    pub fn monomial(&self, x: &TensorElement, k: usize) -> Result<PolyPath> {
        let mut coeffs = vec![self.t.zero(x.degree); k];
        coeffs.push(x.clone());
        self.path(x.degree, coeffs)
    }

    fn get(&self, p: &PolyPath, k: usize) -> TensorElement {
        p.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.t.zero(p.degree))
    }

    pub fn add(&self, p: &PolyPath, q: &PolyPath) -> Result<PolyPath> {
        let n = p.coeffs.len().max(q.coeffs.len());
        self.path(
            p.degree,
            (0..n)
                .map(|k| self.get(p, k).add(&self.get(q, k)))
                .collect(),
        )
    }

    pub fn sub(&self, p: &PolyPath, q: &PolyPath) -> Result<PolyPath> {
        let n = p.coeffs.len().max(q.coeffs.len());
        self.path(
            p.degree,
            (0..n)
                .map(|k| self.get(p, k).sub(&self.get(q, k)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Scalar, p: &PolyPath) -> Result<PolyPath> {
        self.path(p.degree, p.coeffs.iter().map(|x| x.scale(c)).collect())
    }

    pub fn neg(&self, p: &PolyPath) -> Result<PolyPath> {
        self.scale(&int(-1), p)
    }

    /// Pointwise bracket.
    pub fn bracket(&self, p: &PolyPath, q: &PolyPath) -> Result<PolyPath> {
        let degree = p.degree + q.degree;
        if p.is_zero() || q.is_zero() {
            return Ok(self.zero(degree));
        }
        let mut out = vec![self.t.zero(degree); p.coeffs.len() + q.coeffs.len() - 1];
        for (i, a) in p.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in q.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&self.t.bracket(a, b)?);
            }
        }
        self.path(degree, out)
    }

    /// Pointwise differential of `L`.
    pub fn d(&self, p: &PolyPath) -> Result<PolyPath> {
        let coeffs = p
            .coeffs
            .iter()
            .map(|x| self.t.d(x))
            .collect::<Result<_>>()?;
        self.path(p.degree + 1, coeffs)
    }

    pub fn derivative(&self, p: &PolyPath) -> Result<PolyPath> {
        let coeffs = p
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, x)| x.scale(&int(k as i64)))
            .collect();
        self.path(p.degree, coeffs)
    }

    /// `∫₀ᵗ p`.
    pub fn integral(&self, p: &PolyPath) -> Result<PolyPath> {
        let mut coeffs = vec![self.t.zero(p.degree)];
        for (k, x) in p.coeffs.iter().enumerate() {
            coeffs.push(x.scale(&ratio(1, k as i64 + 1)));
        }
        self.path(p.degree, coeffs)
    }

    /// `∫_s^t p`.
    pub fn integral_from(&self, p: &PolyPath, s: &Scalar) -> Result<PolyPath> {
        let prim = self.integral(p)?;
        let at_s = self.evaluate(&prim, s);
        self.sub(&prim, &self.constant(&at_s)?)
    }

    pub fn evaluate(&self, p: &PolyPath, s: &Scalar) -> TensorElement {
        let mut acc = self.t.zero(p.degree);
        for x in p.coeffs.iter().rev() {
            acc = acc.scale(s).add(x);
        }
        acc
    }

    /// Applies `f` to every coefficient, landing in `target`.
    pub fn map(
        &self,
        p: &PolyPath,
        target: &PathSpace,
        f: impl Fn(&TensorElement) -> Result<TensorElement>,
    ) -> Result<PolyPath> {
        let coeffs = p.coeffs.iter().map(f).collect::<Result<_>>()?;
        target.path(p.degree, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin::parse_ring;
    use crate::dgla::fixtures::d2;

    #[test]
    fn calculus() {
        let t = TensorDgla::new(&d2(), &parse_ring("t^3").unwrap()).unwrap();
        let s = PathSpace::new(&t, 4);
        let u = t.from_terms(1, &[("u", "t", int(1))]).unwrap();
        let p = s
            .path(1, vec![u.clone(), u.scale(&int(2)), u.scale(&int(3))])
            .unwrap();
        let back = s.derivative(&s.integral(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        assert_eq!(s.evaluate(&p, &int(1)), u.scale(&int(6)));
        assert_eq!(s.evaluate(&p, &int(0)), u);
        let from_one = s.integral_from(&p, &int(1)).unwrap();
        assert!(s.evaluate(&from_one, &int(1)).is_zero());
        assert!(s.monomial(&u, 5).is_err());
        assert!(s.path(1, vec![u.clone(), t.zero(1)]).unwrap().t_degree() == Some(0));
    }
}
