use std::collections::BTreeMap;

use super::algebra::{sparse, Dgla, DglaBuilder};
use crate::error::{Error, Result};
use crate::linalg::subspace::unit;
use crate::linalg::{Matrix, Scalar};

/// A degree-preserving linear map between DGLAs.
#[derive(Clone, Debug)]
pub struct DglaMorphism {
    pub source: Dgla,
    pub target: Dgla,
    pub blocks: BTreeMap<i32, Matrix>,
}

impl DglaMorphism {
    /// Builds and validates; blocks default to zero where omitted.
    pub fn new(source: Dgla, target: Dgla, mut blocks: BTreeMap<i32, Matrix>) -> Result<Self> {
        for d in source.space().degrees() {
            blocks
                .entry(d)
                .or_insert_with(|| Matrix::zeros(target.dim(d), source.dim(d)));
        }
        let f = DglaMorphism {
            source,
            target,
            blocks,
        };
        f.check()?;
        Ok(f)
    }

    pub fn identity(l: &Dgla) -> Self {
        let blocks = l
            .space()
            .degrees()
            .map(|d| (d, Matrix::identity(l.dim(d))))
            .collect();
        DglaMorphism {
            source: l.clone(),
            target: l.clone(),
            blocks,
        }
    }

    pub fn zero(source: &Dgla, target: &Dgla) -> Self {
        let blocks = source
            .space()
            .degrees()
            .map(|d| (d, Matrix::zeros(target.dim(d), source.dim(d))))
            .collect();
        DglaMorphism {
            source: source.clone(),
            target: target.clone(),
            blocks,
        }
    }

    pub fn apply(&self, d: i32, v: &[Scalar]) -> Result<Vec<Scalar>> {
        match self.blocks.get(&d) {
            Some(m) => m.mul_vec(v),
            None => Ok(vec![Scalar::default(); self.target.dim(d)]),
        }
    }

    /// Checks shapes, compatibility with differentials and brackets.
    pub fn check(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        for (&d, m) in &self.blocks {
            if m.rows() != t.dim(d) || m.cols() != s.dim(d) {
                return Err(Error::InvalidMorphism(format!(
                    "block in degree {d} has the wrong shape"
                )));
            }
            if s.dim(d) > 0 && !t.degree_known(d) {
                return Err(Error::InvalidMorphism(format!(
                    "degree {d} is not represented in the target"
                )));
            }
        }
        for d in s.space().degrees() {
            if !(s.can_differentiate(d) && t.can_differentiate(d)) {
                continue;
            }
            for k in 0..s.dim(d) {
                let e = unit(s.dim(d), k);
                let lhs = self.apply(d + 1, &s.d(d, &e)?)?;
                let rhs = t.d(d, &self.apply(d, &e)?)?;
                if lhs != rhs {
                    return Err(Error::InvalidMorphism(format!(
                        "does not commute with d on {}",
                        s.label(d, k)
                    )));
                }
            }
        }
        for i in s.space().degrees() {
            for j in s.space().degrees() {
                if !(s.can_bracket(i, j) && t.can_bracket(i, j)) {
                    continue;
                }
                for k in 0..s.dim(i) {
                    let a = unit(s.dim(i), k);
                    let fa = self.apply(i, &a)?;
                    for l in 0..s.dim(j) {
                        let b = unit(s.dim(j), l);
                        let lhs = self.apply(i + j, &s.bracket(i, &a, j, &b)?)?;
                        let rhs = t.bracket(i, &fa, j, &self.apply(j, &b)?)?;
                        if lhs != rhs {
                            return Err(Error::InvalidMorphism(format!(
                                "does not preserve [{}, {}]",
                                s.label(i, k),
                                s.label(j, l)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Matrices of `H^i(f)` in the representative bases, for every degree where
/// both cohomologies are determined.
pub fn induced_cohomology_maps(f: &DglaMorphism) -> Result<BTreeMap<i32, Matrix>> {
    f.check()?;
    let hs = f.source.cohomology()?;
    let ht = f.target.cohomology()?;
    let mut out = BTreeMap::new();
    let lo = f.source.min().min(f.target.min());
    let hi = f.source.max().max(f.target.max());
    for d in lo..=hi {
        let ds = f.source.h_dim(d)?;
        let dt = f.target.h_dim(d)?;
        let (Some(ns), Some(nt)) = (ds, dt) else {
            continue;
        };
        let mut m = Matrix::zeros(nt, ns);
        if ns > 0 && nt > 0 {
            let src = hs.at(d)?;
            let tgt = ht.at(d)?;
            for (c, h) in src.h.basis().iter().enumerate() {
                let img = tgt.class_of(&f.apply(d, h)?)?;
                for (r, x) in img.into_iter().enumerate() {
                    m.set(r, c, x);
                }
            }
        }
        out.insert(d, m);
    }
    Ok(out)
}

pub fn is_bijective(m: &Matrix) -> bool {
    m.rows() == m.cols() && m.rank() == m.cols()
}

pub fn is_quasi_isomorphism(f: &DglaMorphism) -> Result<bool> {
    Ok(induced_cohomology_maps(f)?.values().all(is_bijective))
}

/// The cohomology algebra with zero differential and induced bracket.
pub fn cohomology_dgla(l: &Dgla) -> Result<Dgla> {
    let h = l.cohomology()?;
    let top = h
        .degrees
        .keys()
        .copied()
        .filter(|&d| d >= l.min())
        .max()
        .unwrap_or(l.min());
    let truncated = l.truncated_above() && top < l.max() || l.truncated_above();
    let mut b =
        DglaBuilder::new(format!("H({})", l.name()), l.min(), top).truncated_above(truncated);
    for d in l.min()..=top {
        let n = h.dim(d).unwrap_or(0);
        b.set_degree(d, (0..n).map(|k| format!("h{d}_{k}")).collect());
    }
    for i in l.min()..=top {
        for j in l.min()..=top {
            let t = i + j;
            if t < l.min() || t > top || !l.can_bracket(i, j) {
                continue;
            }
            let (hi, hj, ht) = (h.at(i)?, h.at(j)?, h.at(t)?);
            for (k, x) in hi.h.basis().iter().enumerate() {
                for (m, y) in hj.h.basis().iter().enumerate() {
                    let br = l.bracket(i, x, j, y)?;
                    for (r, c) in sparse(&ht.class_of(&br)?) {
                        b.add_bracket(i, k, j, m, r, c);
                    }
                    b.add_bracket(i, k, j, m, 0, Scalar::default());
                }
            }
        }
    }
    b.build()
}
