use std::collections::BTreeMap;

use num_traits::Zero;

use super::algebra::SparseVec;
use crate::error::{Error, Result};
use crate::graded::GradedSpace;
use crate::linalg::scalar::sign;
use crate::linalg::subspace::unit;
use crate::linalg::{vector, Scalar};

/// A finite-dimensional graded associative algebra given by structure
/// constants; `product[(i, j)][k * dim(j) + l]` is `e_k e_l` in degree `i + j`.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    space: GradedSpace,
    product: BTreeMap<(i32, i32), Vec<SparseVec>>,
}

impl GradedAlgebra {
    pub fn new(space: GradedSpace) -> Self {
        GradedAlgebra {
            space,
            product: BTreeMap::new(),
        }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self, d: i32) -> usize {
        self.space.dim(d)
    }

    /// Adds `c * e_m` to `e_k e_l`.
    pub fn add_product(
        &mut self,
        i: i32,
        k: usize,
        j: i32,
        l: usize,
        m: usize,
        c: Scalar,
    ) -> Result<()> {
        if !self.space.in_window(i + j) {
            return Err(Error::Window(format!(
                "product of degrees {i} and {j} lands outside the window"
            )));
        }
        if k >= self.dim(i) || l >= self.dim(j) || m >= self.dim(i + j) {
            return Err(Error::Shape("product index out of range".into()));
        }
        let dj = self.dim(j);
        let t = self
            .product
            .entry((i, j))
            .or_insert_with(|| vec![Vec::new(); self.space.dim(i) * dj]);
        let cell = &mut t[k * dj + l];
        match cell.iter_mut().find(|(x, _)| *x == m) {
            Some((_, v)) => *v += c,
            None => cell.push((m, c)),
        }
        cell.retain(|(_, v)| !v.is_zero());
        Ok(())
    }

    /// Adds a product rule by basis labels.
    pub fn rule(mut self, a: &str, b: &str, terms: &[(&str, Scalar)]) -> Result<Self> {
        let find = |s: &str| {
            self.space
                .find(s)
                .ok_or_else(|| Error::Parse(format!("unknown basis label {s:?}")))
        };
        let (i, k) = find(a)?;
        let (j, l) = find(b)?;
        let mut resolved = Vec::new();
        for (t, c) in terms {
            let (d, m) = find(t)?;
            if d != i + j {
                return Err(Error::InvalidAlgebra(format!(
                    "{a}·{b} cannot contain {t} of degree {d}"
                )));
            }
            resolved.push((m, c.clone()));
        }
        for (m, c) in resolved {
            self.add_product(i, k, j, l, m, c)?;
        }
        Ok(self)
    }

    pub fn basis_product(&self, i: i32, k: usize, j: i32, l: usize) -> &[(usize, Scalar)] {
        self.product
            .get(&(i, j))
            .map(|t| t[k * self.dim(j) + l].as_slice())
            .unwrap_or(&[])
    }

    pub fn mul(&self, i: i32, a: &[Scalar], j: i32, b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vector::zeros(self.dim(i + j));
        for (k, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (l, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                for (m, c) in self.basis_product(i, k, j, l) {
                    out[*m] += x * y * c;
                }
            }
        }
        out
    }

    pub fn is_associative(&self) -> bool {
        let ds: Vec<i32> = self.space.degrees().collect();
        for &i in &ds {
            for &j in &ds {
                for &k in &ds {
                    for a in 0..self.dim(i) {
                        let ea = unit(self.dim(i), a);
                        for b in 0..self.dim(j) {
                            let eb = unit(self.dim(j), b);
                            let ab = self.mul(i, &ea, j, &eb);
                            for c in 0..self.dim(k) {
                                let ec = unit(self.dim(k), c);
                                let l = self.mul(i + j, &ab, k, &ec);
                                let r = self.mul(i, &ea, j + k, &self.mul(j, &eb, k, &ec));
                                if l != r {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// `ab = (-1)^{|a||b|} ba` on basis pairs.
    pub fn is_graded_commutative(&self) -> bool {
        let ds: Vec<i32> = self.space.degrees().collect();
        for &i in &ds {
            for &j in &ds {
                let s = sign((i * j) as i64);
                for a in 0..self.dim(i) {
                    let ea = unit(self.dim(i), a);
                    for b in 0..self.dim(j) {
                        let eb = unit(self.dim(j), b);
                        let ab = self.mul(i, &ea, j, &eb);
                        let ba = self.mul(j, &eb, i, &ea);
                        if ab != vector::scale(&s, &ba) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// An ungraded finite-dimensional unital associative algebra.
#[derive(Clone, Debug)]
pub struct AssocAlgebra {
    pub labels: Vec<String>,
    /// `table[a * n + b]` is the product `e_a e_b`.
    pub table: Vec<Vec<Scalar>>,
    pub unit: Vec<Scalar>,
}

impl AssocAlgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> &[Scalar] {
        &self.table[a * self.dim() + b]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vector::zeros(n);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                vector::axpy(&mut out, &(xa * yb), self.mul_basis(a, b));
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        if self.table.len() != n * n
            || self.table.iter().any(|r| r.len() != n)
            || self.unit.len() != n
        {
            return Err(Error::Shape(
                "multiplication table has the wrong shape".into(),
            ));
        }
        for a in 0..n {
            let ea = unit(n, a);
            if self.mul(&self.unit, &ea) != ea || self.mul(&ea, &self.unit) != ea {
                return Err(Error::InvalidAlgebra(
                    "unit is not a two-sided identity".into(),
                ));
            }
            for b in 0..n {
                for c in 0..n {
                    let l = self.mul(self.mul_basis(a, b), &unit(n, c));
                    let r = self.mul(&ea, self.mul_basis(b, c));
                    if l != r {
                        return Err(Error::InvalidAlgebra(format!(
                            "not associative on ({}, {}, {})",
                            self.labels[a], self.labels[b], self.labels[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
