//! Hochschild cochains `Hom(A^{⊗(n+1)}, A)` in degree `n` with the
//! Gerstenhaber bracket, on the window `[0, max]`.
//!
//! The differential is `φ ↦ [μ, φ]` for the multiplication cochain `μ`.
//! On `G^p` this equals `(-1)^p` times the usual Hochschild coboundary
//! `(bφ)(a_0..a_{p+1}) = a_0 φ(a_1..) + Σ (-1)^{i+1} φ(..a_i a_{i+1}..) + (-1)^p φ(a_0..a_p) a_{p+1}`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::dgla::algebra::{Dgla, DglaBuilder};
use crate::dgla::graded_algebra::AssocAlgebra;
use crate::error::{Error, Result};
use crate::linalg::scalar::{int, sign};
use crate::linalg::{Matrix, Scalar};

/// Basis cochain of `G^n`: inputs `(i_0..i_n)` and output `j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cochain {
    pub inputs: Vec<usize>,
    pub output: usize,
}

/// Index layout of the cochain basis in each degree.
pub struct CochainBasis {
    pub dim_a: usize,
}

impl CochainBasis {
    pub fn dim(&self, n: i32) -> usize {
        self.dim_a.pow(n as u32 + 2)
    }

    pub fn index(&self, c: &Cochain) -> usize {
        let mut idx = 0;
        for &i in &c.inputs {
            idx = idx * self.dim_a + i;
        }
        idx * self.dim_a + c.output
    }

    pub fn cochain(&self, n: i32, mut idx: usize) -> Cochain {
        let output = idx % self.dim_a;
        idx /= self.dim_a;
        let mut inputs = vec![0; n as usize + 1];
        for slot in inputs.iter_mut().rev() {
            *slot = idx % self.dim_a;
            idx /= self.dim_a;
        }
        Cochain { inputs, output }
    }
}

/// `φ∘ψ` for basis cochains `φ ∈ G^n`, `ψ ∈ G^m`, accumulated into `out`.
fn circle_basis(
    basis: &CochainBasis,
    n: i32,
    phi: &Cochain,
    m: i32,
    psi: &Cochain,
    coeff: &Scalar,
    out: &mut BTreeMap<usize, Scalar>,
) {
    for i in 0..=(n as usize) {
        if phi.inputs[i] != psi.output {
            continue;
        }
        let mut inputs = phi.inputs[..i].to_vec();
        inputs.extend_from_slice(&psi.inputs);
        inputs.extend_from_slice(&phi.inputs[i + 1..]);
        let k = basis.index(&Cochain {
            inputs,
            output: phi.output,
        });
        *out.entry(k).or_default() += coeff * sign(i as i64 * m as i64);
    }
}

fn gerstenhaber_basis(
    basis: &CochainBasis,
    n: i32,
    phi: &Cochain,
    m: i32,
    psi: &Cochain,
) -> BTreeMap<usize, Scalar> {
    let mut out = BTreeMap::new();
    circle_basis(basis, n, phi, m, psi, &int(1), &mut out);
    circle_basis(basis, m, psi, n, phi, &-sign((n * m) as i64), &mut out);
    out.retain(|_, v| !v.is_zero());
    out
}

fn labels(a: &AssocAlgebra, basis: &CochainBasis, n: i32) -> Vec<String> {
    (0..basis.dim(n))
        .map(|k| {
            let c = basis.cochain(n, k);
            let ins: Vec<&str> = c.inputs.iter().map(|&i| a.labels[i].as_str()).collect();
            format!("({})->{}", ins.join(","), a.labels[c.output])
        })
        .collect()
}

/// The multiplication of `a` as a cochain of degree one.
pub fn multiplication_cochain(a: &AssocAlgebra) -> Vec<Scalar> {
    let basis = CochainBasis { dim_a: a.dim() };
    let mut v = vec![Scalar::zero(); basis.dim(1)];
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            for (z, c) in a.mul_basis(x, y).iter().enumerate() {
                if !c.is_zero() {
                    v[basis.index(&Cochain {
                        inputs: vec![x, y],
                        output: z,
                    })] += c;
                }
            }
        }
    }
    v
}

pub fn build_hochschild_window(a: &AssocAlgebra, max_degree: i32) -> Result<Dgla> {
    a.validate()?;
    if max_degree < 1 {
        return Err(Error::Precondition(
            "the window must reach degree 1 to hold the multiplication".into(),
        ));
    }
    let basis = CochainBasis { dim_a: a.dim() };
    let mut b = DglaBuilder::new(format!("HH{}", a.dim()), 0, max_degree).truncated_above(true);
    for n in 0..=max_degree {
        b.set_degree(n, labels(a, &basis, n));
    }
    for n in 0..=max_degree {
        for m in 0..=max_degree - n {
            for k in 0..basis.dim(n) {
                let phi = basis.cochain(n, k);
                for l in 0..basis.dim(m) {
                    let psi = basis.cochain(m, l);
                    b.add_bracket(n, k, m, l, 0, Scalar::zero());
                    for (t, c) in gerstenhaber_basis(&basis, n, &phi, m, &psi) {
                        b.add_bracket(n, k, m, l, t, c);
                    }
                }
            }
        }
    }
    let mu = multiplication_cochain(a);
    for p in 0..max_degree {
        let mut d = Matrix::zeros(basis.dim(p + 1), basis.dim(p));
        for k in 0..basis.dim(p) {
            let phi = basis.cochain(p, k);
            for (j, c) in mu.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let m = basis.cochain(1, j);
                for (t, v) in gerstenhaber_basis(&basis, 1, &m, p, &phi) {
                    let e = d.entry_mut(t, k);
                    *e += c * v;
                }
            }
        }
        b.set_differential(p, d);
    }
    b.build()
}

/// The usual Hochschild coboundary on `G^p`, used to cross-check signs.
pub fn standard_coboundary(a: &AssocAlgebra, p: i32, phi: &[Scalar]) -> Vec<Scalar> {
    let basis = CochainBasis { dim_a: a.dim() };
    let n = a.dim();
    let eval = |ins: &[usize]| -> Vec<Scalar> {
        (0..n)
            .map(|o| {
                let k = basis.index(&Cochain {
                    inputs: ins.to_vec(),
                    output: o,
                });
                phi[k].clone()
            })
            .collect::<Vec<Scalar>>()
    };
    let unit_vec = |i: usize| {
        let mut v = vec![Scalar::zero(); n];
        v[i] = int(1);
        v
    };
    let mut out = vec![Scalar::zero(); basis.dim(p + 1)];
    for idx in 0..basis.dim(p + 1) / n {
        let ins = basis.cochain(p + 1, idx * n).inputs;
        let mut val = a.mul(&unit_vec(ins[0]), &eval(&ins[1..]));
        let last = a.mul(&eval(&ins[..ins.len() - 1]), &unit_vec(ins[ins.len() - 1]));
        for (v, x) in val.iter_mut().zip(&last) {
            *v += sign(p as i64) * x;
        }
        for i in 0..=(p as usize) {
            let prod = a.mul_basis(ins[i], ins[i + 1]);
            for (z, c) in prod.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut merged = ins[..i].to_vec();
                merged.push(z);
                merged.extend_from_slice(&ins[i + 2..]);
                let e = eval(&merged);
                for (v, x) in val.iter_mut().zip(&e) {
                    *v += sign(i as i64 + 1) * c * x;
                }
            }
        }
        for (o, v) in val.into_iter().enumerate() {
            out[idx * n + o] = v;
        }
    }
    out
}
