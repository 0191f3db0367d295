//! Subspaces of `K^n` with explicit bases.

use num_traits::Zero;

use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A subspace of `K^ambient` given by linearly independent basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit(ambient, i)).collect();
        Subspace { ambient, basis }
    }

    /// Trusts the caller that `basis` is independent.
    pub(crate) fn from_independent(ambient: usize, basis: Vec<Vec<Scalar>>) -> Self {
        debug_assert!(basis.iter().all(|b| b.len() == ambient));
        Subspace { ambient, basis }
    }

    /// Span of arbitrary vectors; keeps the first independent ones in order.
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<Scalar>>) -> Result<Self> {
        let mut ech = Echelon::new(ambient);
        let mut basis = Vec::new();
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::Shape(format!(
                    "vector of length {} in a space of dimension {ambient}",
                    v.len()
                )));
            }
            if ech.insert(&v) {
                basis.push(v);
            }
        }
        Ok(Subspace { ambient, basis })
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.clone()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_cols(&self.basis, self.ambient).expect("consistent basis")
    }

    /// Coordinates of `v` in this basis, or `None` when `v` is outside.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.ambient {
            return None;
        }
        if self.basis.is_empty() {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        self.basis_matrix()
            .solve_affine(v)
            .ok()
            .flatten()
            .map(|s| s.particular)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return v.len() == self.ambient;
        }
        let mut ech = Echelon::new(self.ambient);
        for b in &self.basis {
            ech.insert(b);
        }
        !ech.insert(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        if other.ambient != self.ambient {
            return false;
        }
        let mut ech = Echelon::new(self.ambient);
        for b in &self.basis {
            ech.insert(b);
        }
        other.basis.iter().all(|v| !ech.clone().insert(v))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    /// Canonical basis: the nonzero rows of the reduced row echelon form.
    pub fn rref_basis(&self) -> Vec<Vec<Scalar>> {
        if self.basis.is_empty() {
            return Vec::new();
        }
        let m = Matrix::from_rows(self.basis.clone(), self.ambient).expect("consistent basis");
        let (r, piv) = m.rref();
        (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::Shape("sum of subspaces of different spaces".into()));
        }
        Subspace::span(
            self.ambient,
            self.basis.iter().chain(other.basis.iter()).cloned(),
        )
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::Shape(
                "intersection of subspaces of different spaces".into(),
            ));
        }
        // Solve sum a_i u_i = sum b_j w_j.
        let m = self
            .basis_matrix()
            .hstack(&other.basis_matrix().scale(&-Scalar::from_integer(1.into())))?;
        let k = m.kernel();
        Subspace::span(
            self.ambient,
            k.basis.iter().map(|c| {
                let mut v = vec![Scalar::zero(); self.ambient];
                for (i, u) in self.basis.iter().enumerate() {
                    if c[i].is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(u) {
                        *x += &c[i] * y;
                    }
                }
                v
            }),
        )
    }

    /// Deterministic complement of `self` inside `outer`: scans the reduced
    /// echelon basis of `outer` in pivot order and keeps every vector not yet
    /// in the span.
    pub fn complement_in(&self, outer: &Subspace) -> Result<Subspace> {
        if !outer.contains_subspace(self) {
            return Err(Error::Containment(
                "complement: subspace is not contained in the outer space".into(),
            ));
        }
        let mut ech = Echelon::new(self.ambient);
        for b in &self.basis {
            ech.insert(b);
        }
        let mut out = Vec::new();
        for v in outer.rref_basis() {
            if ech.insert(&v) {
                out.push(v);
            }
        }
        Ok(Subspace {
            ambient: self.ambient,
            basis: out,
        })
    }
}

/// Complement of `u` inside `v`.
pub fn complement(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    u.complement_in(v)
}

pub fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::from_integer(1.into());
    v
}

/// Incrementally maintained echelon form used for independence tests.
#[derive(Clone, Debug)]
pub struct Echelon {
    n: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon {
            n,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(v.len(), self.n);
        let mut w = v.to_vec();
        for (p, r) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let f = w[*p].clone();
            for (x, y) in w.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        w
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            *x *= &inv;
        }
        for (_, r) in self.rows.iter_mut() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, w));
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}
