use std::collections::BTreeMap;

use num_traits::Zero;

use super::action::exp_action;
use crate::artin::ArtinAlgebra;
use crate::dgla::graded_algebra::GradedAlgebra;
use crate::dgla::{Dgla, DglaBuilder, DglaMorphism};
use crate::error::{Error, Result};
use crate::graded::GradedSpace;
use crate::linalg::scalar::{int, inv_factorial, sign};
use crate::linalg::{vector, Matrix, Scalar};
use crate::mc::{sample_element, McSampler, TensorDgla, TensorElement};
use crate::rng::Lcg;

/// A graded associative algebra `P` with `D ∈ P¹`, `D² = 0`, seen as a
/// DGLA with the graded commutator and `δ = [D, ·]`. Without a product
/// table only the DGLA structure is known and every product that does not
/// vanish for coefficient reasons fails with [`Error::NoEnvelope`].
#[derive(Clone, Debug)]
pub struct Pga {
    dgla: Dgla,
    product: Option<GradedAlgebra>,
}

impl Pga {
    pub fn from_algebra(name: &str, alg: GradedAlgebra, d: Vec<Scalar>) -> Result<Self> {
        if !alg.is_associative() {
            return Err(Error::InvalidAlgebra("envelope is not associative".into()));
        }
        let sp = alg.space().clone();
        if d.len() != sp.dim(1) {
            return Err(Error::Shape("D must lie in degree 1".into()));
        }
        if !vector::is_zero(&alg.mul(1, &d, 1, &d)) {
            return Err(Error::InvalidAlgebra("D² ≠ 0".into()));
        }
        let mut b = DglaBuilder::new(name, sp.min(), sp.max());
        for deg in sp.degrees() {
            b.set_degree(deg, sp.labels(deg).to_vec());
        }
        for deg in sp.degrees() {
            let n = sp.dim(deg);
            let mut m = Matrix::zeros(sp.dim(deg + 1), n);
            for k in 0..n {
                let e = crate::linalg::subspace::unit(n, k);
                let v = commutator(&alg, 1, &d, deg, &e);
                for (r, c) in v.into_iter().enumerate() {
                    m.set(r, k, c);
                }
            }
            if sp.in_window(deg + 1) {
                b.set_differential(deg, m);
            } else if !m.is_zero() {
                return Err(Error::Window("δ leaves the window".into()));
            }
        }
        for i in sp.degrees() {
            for j in sp.degrees() {
                if !sp.in_window(i + j) {
                    continue;
                }
                for k in 0..sp.dim(i) {
                    for l in 0..sp.dim(j) {
                        let ab = alg.basis_product(i, k, j, l);
                        let ba = alg.basis_product(j, l, i, k);
                        let s = -sign((i * j) as i64);
                        b.add_bracket(i, k, j, l, 0, Scalar::zero());
                        for (m, c) in ab {
                            b.add_bracket(i, k, j, l, *m, c.clone());
                        }
                        for (m, c) in ba {
                            b.add_bracket(i, k, j, l, *m, &s * c);
                        }
                    }
                }
            }
        }
        Ok(Pga {
            dgla: b.build()?,
            product: Some(alg),
        })
    }

    pub fn without_product(dgla: Dgla) -> Self {
        Pga {
            dgla,
            product: None,
        }
    }

    pub fn dgla(&self) -> &Dgla {
        &self.dgla
    }

    pub fn has_product(&self) -> bool {
        self.product.is_some()
    }
}

fn commutator(alg: &GradedAlgebra, i: i32, a: &[Scalar], j: i32, b: &[Scalar]) -> Vec<Scalar> {
    let ab = alg.mul(i, a, j, b);
    let ba = alg.mul(j, b, i, a);
    let s = sign((i * j) as i64);
    ab.iter().zip(&ba).map(|(x, y)| x - &s * y).collect()
}

/// `P ⊗ m_A` with the associative product.
pub struct PgaOver<'a> {
    pub pga: &'a Pga,
    pub t: TensorDgla,
}

impl<'a> PgaOver<'a> {
    pub fn new(pga: &'a Pga, ring: &ArtinAlgebra) -> Result<Self> {
        Ok(PgaOver {
            pga,
            t: TensorDgla::new(&pga.dgla, ring)?,
        })
    }

    pub fn mul(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
        let ring = self.t.ring();
        let n = ring.dim_m();
        let (i, j) = (x.degree, y.degree);
        let mut out = self.t.zero(i + j);
        for (p, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (q, b) in y.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = ring.mul_basis(p % n, q % n);
                if prod.is_empty() {
                    continue;
                }
                let Some(alg) = &self.pga.product else {
                    return Err(Error::NoEnvelope(
                        "a product in the envelope is needed but none was supplied".into(),
                    ));
                };
                let c = a * b;
                for (m, v) in alg.basis_product(i, p / n, j, q / n) {
                    for (g, w) in prod {
                        out.coeffs[m * n + g] += &c * v * w;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `e^a − 1 = Σ_{n≥1} aⁿ/n!` in the envelope.
    pub fn exp_minus_one(&self, a: &TensorElement) -> Result<TensorElement> {
        let mut out = self.t.zero(0);
        let mut pow = a.clone();
        for n in 1..=self.t.ring().nilpotency_index() {
            if pow.is_zero() {
                break;
            }
            out = out.add(&pow.scale(&inv_factorial(n)));
            pow = self.mul(&pow, a)?;
        }
        Ok(out)
    }

    /// `g * v = v + Σ_{i≥0} (−1)^i ([g,v] − δg) g^i`.
    pub fn action(&self, g: &TensorElement, v: &TensorElement) -> Result<TensorElement> {
        let mut term = self.t.bracket(g, v)?.sub(&self.t.d(g)?);
        let mut out = v.clone();
        for _ in 0..=self.t.ring().nilpotency_index() {
            if term.is_zero() {
                break;
            }
            out = out.add(&term);
            term = self.mul(&term, g)?.neg();
        }
        Ok(out)
    }
}

/// A DGLA presented inside a PGA.
#[derive(Clone, Debug)]
pub struct PgaEmbedding {
    pub pga: Pga,
    pub rho: DglaMorphism,
}

impl PgaEmbedding {
    pub fn new(pga: Pga, l: &Dgla, blocks: BTreeMap<i32, Matrix>) -> Result<Self> {
        let rho = DglaMorphism::new(l.clone(), pga.dgla.clone(), blocks)?;
        Ok(PgaEmbedding { pga, rho })
    }

    /// `L` inside itself, with no product available.
    pub fn trivial(l: &Dgla) -> Self {
        PgaEmbedding {
            pga: Pga::without_product(l.clone()),
            rho: DglaMorphism::identity(l),
        }
    }

    fn push(
        &self,
        over_l: &TensorDgla,
        over_p: &TensorDgla,
        x: &TensorElement,
    ) -> Result<TensorElement> {
        let m = self.rho.blocks.get(&x.degree).cloned().unwrap_or_else(|| {
            Matrix::zeros(self.pga.dgla.dim(x.degree), over_l.base().dim(x.degree))
        });
        over_l.map_base(x, &m, over_p, x.degree)
    }

    /// Checks `ρ(e^a * x) = (e^{ρa} − 1) * ρx` on seeded samples.
    pub fn agreement(
        &self,
        ring: &ArtinAlgebra,
        rng: &mut Lcg,
        samples: usize,
    ) -> Result<AgreementReport> {
        let l = &self.rho.source;
        let tl = TensorDgla::new(l, ring)?;
        let po = PgaOver::new(&self.pga, ring)?;
        let mut rep = AgreementReport::default();
        let mc = McSampler::new(l, ring)?;
        for s in 0..samples {
            let a = sample_element(&tl, 0, rng);
            let x = mc.sample(rng)?;
            let lhs = self.push(&tl, &po.t, &exp_action(&tl, &a, &x)?)?;
            let g = po.exp_minus_one(&self.push(&tl, &po.t, &a)?)?;
            let rhs = po.action(&g, &self.push(&tl, &po.t, &x)?)?;
            rep.checked += 1;
            if lhs != rhs {
                rep.failures.push(s);
            }
        }
        Ok(rep)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct AgreementReport {
    pub checked: usize,
    pub failures: Vec<usize>,
}

impl AgreementReport {
    pub fn passed(&self) -> bool {
        self.checked > 0 && self.failures.is_empty()
    }
}

/// `(p, q) ↦ (degree, index)` of `E_pq` in [`end_algebra`].
pub type EndPositions = BTreeMap<(usize, usize), (i32, usize)>;

/// `End(V)` for a graded space with one basis vector of each listed degree;
/// `E_pq` sends basis vector `q` to `p` and has degree `deg p − deg q`.
pub fn end_algebra(degrees: &[i32]) -> Result<(GradedAlgebra, EndPositions)> {
    let lo = degrees.iter().min().copied().unwrap_or(0);
    let hi = degrees.iter().max().copied().unwrap_or(0);
    let (min, max) = (lo - hi, hi - lo);
    let mut labels: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    let mut pos = BTreeMap::new();
    for p in 0..degrees.len() {
        for q in 0..degrees.len() {
            let d = degrees[p] - degrees[q];
            let ls = labels.entry(d).or_default();
            pos.insert((p, q), (d, ls.len()));
            ls.push(format!("E{p}{q}"));
        }
    }
    let space = GradedSpace::new(
        min,
        max,
        (min..=max)
            .map(|d| labels.remove(&d).unwrap_or_default())
            .collect(),
    )?;
    let mut alg = GradedAlgebra::new(space);
    let n = degrees.len();
    for p in 0..n {
        for q in 0..n {
            for s in 0..n {
                let (i, k) = pos[&(p, q)];
                let (j, l) = pos[&(q, s)];
                let (_, m) = pos[&(p, s)];
                alg.add_product(i, k, j, l, m, int(1))?;
            }
        }
    }
    Ok((alg, pos))
}

/// `D2` inside `End(K² ⊕ K²[−1])` with `D = 1 ⊗ E₁₀`, `c ↦ N ⊗ e₀₀`,
/// `u ↦ N ⊗ E₁₀`, `N = [[0,1],[0,0]]`.
pub fn d2_envelope(d2: &Dgla) -> Result<PgaEmbedding> {
    let (alg, pos) = end_algebra(&[0, 0, 1, 1])?;
    let mut d = vector::zeros(alg.dim(1));
    d[pos[&(2, 0)].1] = int(1);
    d[pos[&(3, 1)].1] = int(1);
    let pga = Pga::from_algebra("End(V)", alg, d)?;
    let mut blocks = BTreeMap::new();
    let mut r0 = Matrix::zeros(pga.dgla.dim(0), 1);
    r0.set(pos[&(0, 1)].1, 0, int(1));
    let mut r1 = Matrix::zeros(pga.dgla.dim(1), 1);
    r1.set(pos[&(2, 1)].1, 0, int(1));
    blocks.insert(0, r0);
    blocks.insert(1, r1);
    PgaEmbedding::new(pga, d2, blocks)
}
