use std::collections::BTreeMap;

use num_traits::Zero;

use super::space::GradedSpace;
use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix, Scalar, Subspace};

/// A homogeneous linear map of degree `shift`; `blocks[i]` sends degree
/// `i` to degree `i + shift`. A missing block means the map is not known
/// in that degree (for instance past a truncated window).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub shift: i32,
    pub blocks: BTreeMap<i32, Matrix>,
}

impl GradedMap {
    pub fn new(shift: i32) -> Self {
        GradedMap {
            shift,
            blocks: BTreeMap::new(),
        }
    }

    pub fn zero(space: &GradedSpace, target: &GradedSpace, shift: i32) -> Self {
        let blocks = space
            .degrees()
            .map(|i| (i, Matrix::zeros(target.dim(i + shift), space.dim(i))))
            .collect();
        GradedMap { shift, blocks }
    }

    pub fn identity(space: &GradedSpace) -> Self {
        let blocks = space
            .degrees()
            .map(|i| (i, Matrix::identity(space.dim(i))))
            .collect();
        GradedMap { shift: 0, blocks }
    }

    pub fn block(&self, i: i32) -> Option<&Matrix> {
        self.blocks.get(&i)
    }

    pub fn apply(&self, i: i32, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let b = self
            .block(i)
            .ok_or_else(|| Error::Window(format!("map unknown in degree {i}")))?;
        b.mul_vec(v)
    }

    /// Checks block shapes against source and target spaces.
    pub fn check_shapes(&self, source: &GradedSpace, target: &GradedSpace) -> Result<()> {
        for (&i, b) in &self.blocks {
            if b.cols() != source.dim(i) || b.rows() != target.dim(i + self.shift) {
                return Err(Error::Shape(format!(
                    "block in degree {i} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    target.dim(i + self.shift),
                    source.dim(i)
                )));
            }
        }
        Ok(())
    }
}

/// Per-degree outcome of `d∘d = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexReport {
    pub checked: Vec<(i32, bool)>,
}

impl ComplexReport {
    pub fn passed(&self) -> bool {
        self.checked.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<i32> {
        self.checked
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(i, _)| *i)
            .collect()
    }
}

pub fn verify_complex(space: &GradedSpace, d: &GradedMap) -> Result<ComplexReport> {
    if d.shift != 1 {
        return Err(Error::Shape(format!("differential has shift {}", d.shift)));
    }
    d.check_shapes(space, space)?;
    let mut checked = Vec::new();
    for (&i, a) in &d.blocks {
        if let Some(b) = d.block(i + 1) {
            checked.push((i, b.mul(a)?.is_zero()));
        }
    }
    Ok(ComplexReport { checked })
}

/// Cohomology of a single degree together with the splitting
/// `L = B ⊕ H ⊕ C`, `Z = B ⊕ H`.
#[derive(Clone, Debug)]
pub struct DegreeCohomology {
    pub degree: i32,
    pub z: Subspace,
    pub b: Subspace,
    pub h: Subspace,
    pub c: Subspace,
    /// Inverse of `[B | H | C]`; its rows give coordinates in that basis.
    t_inv: Matrix,
}

impl DegreeCohomology {
    fn new(degree: i32, z: Subspace, b: Subspace) -> Result<Self> {
        let n = z.ambient();
        let h = b.complement_in(&z)?;
        let c = z.complement_in(&Subspace::full(n))?;
        let t = b
            .basis_matrix()
            .hstack(&h.basis_matrix())?
            .hstack(&c.basis_matrix())?;
        let t_inv = t
            .inverse()
            .ok_or_else(|| Error::Internal("splitting basis is singular".into()))?;
        Ok(DegreeCohomology {
            degree,
            z,
            b,
            h,
            c,
            t_inv,
        })
    }

    /// Cohomology of a zero space.
    pub fn trivial(degree: i32) -> Self {
        DegreeCohomology::new(degree, Subspace::zero(0), Subspace::zero(0)).expect("empty split")
    }

    pub fn ambient(&self) -> usize {
        self.z.ambient()
    }

    pub fn dim_h(&self) -> usize {
        self.h.dim()
    }

    fn rows(&self, v: &[Scalar], from: usize, len: usize) -> Vec<Scalar> {
        let all = self.t_inv.mul_vec(v).expect("ambient length");
        all[from..from + len].to_vec()
    }

    /// Coordinates of the `B`, `H` and `C` components of `v`.
    pub fn b_coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.rows(v, 0, self.b.dim())
    }

    pub fn h_coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.rows(v, self.b.dim(), self.h.dim())
    }

    pub fn c_coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.rows(v, self.b.dim() + self.h.dim(), self.c.dim())
    }

    pub fn b_part(&self, v: &[Scalar]) -> Vec<Scalar> {
        vector::combine(&self.b_coords(v), self.b.basis(), self.ambient())
    }

    pub fn h_part(&self, v: &[Scalar]) -> Vec<Scalar> {
        vector::combine(&self.h_coords(v), self.h.basis(), self.ambient())
    }

    pub fn c_part(&self, v: &[Scalar]) -> Vec<Scalar> {
        vector::combine(&self.c_coords(v), self.c.basis(), self.ambient())
    }

    /// Cohomology class of a cocycle in the basis of `H`.
    pub fn class_of(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.ambient() {
            return Err(Error::Shape("class_of: wrong length".into()));
        }
        if !self.c_coords(v).iter().all(Zero::is_zero) {
            return Err(Error::Precondition(format!(
                "vector is not a cocycle in degree {}",
                self.degree
            )));
        }
        Ok(self.h_coords(v))
    }

    /// The class map as a matrix on coordinates of `Z` in its own basis.
    pub fn class_projection(&self) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self.z.basis().iter().map(|z| self.h_coords(z)).collect();
        Matrix::from_cols(&cols, self.h.dim()).expect("consistent shapes")
    }

    /// Projector onto `H` with kernel `B ⊕ C`.
    pub fn harmonic_projector(&self) -> Matrix {
        let n = self.ambient();
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|j| self.h_part(&crate::linalg::subspace::unit(n, j)))
            .collect();
        Matrix::from_cols(&cols, n).expect("consistent shapes")
    }
}

/// Cohomology in every degree where it is determined.
#[derive(Clone, Debug)]
pub struct CohomologyData {
    pub degrees: BTreeMap<i32, DegreeCohomology>,
}

impl CohomologyData {
    pub fn get(&self, i: i32) -> Option<&DegreeCohomology> {
        self.degrees.get(&i)
    }

    pub fn at(&self, i: i32) -> Result<&DegreeCohomology> {
        self.get(i)
            .ok_or_else(|| Error::Window(format!("cohomology unavailable in degree {i}")))
    }

    /// `dim H^i`; zero for degrees outside the computed range but below it.
    pub fn dim(&self, i: i32) -> Option<usize> {
        self.get(i).map(DegreeCohomology::dim_h)
    }
}

pub fn cohomology(space: &GradedSpace, d: &GradedMap) -> Result<CohomologyData> {
    let report = verify_complex(space, d)?;
    if !report.passed() {
        return Err(Error::NotComplex(format!(
            "d∘d ≠ 0 starting in degrees {:?}",
            report.failures()
        )));
    }
    let mut degrees = BTreeMap::new();
    for i in space.degrees() {
        let Some(di) = d.block(i) else { continue };
        let b = if space.in_window(i - 1) {
            match d.block(i - 1) {
                Some(prev) => prev.image(),
                None => continue,
            }
        } else {
            Subspace::zero(space.dim(i))
        };
        let z = di.kernel();
        degrees.insert(i, DegreeCohomology::new(i, z, b)?);
    }
    Ok(CohomologyData { degrees })
}
