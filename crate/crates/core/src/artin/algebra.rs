use std::collections::BTreeMap;

use num_traits::Zero;

use crate::dgla::graded_algebra::AssocAlgebra;
use crate::dgla::SparseVec;
use crate::error::{Error, Result};
use crate::linalg::scalar::int;
use crate::linalg::{vector, Matrix, Scalar, Subspace};

/// A local Artinian 𝕂-algebra with residue field 𝕂, described by its
/// maximal ideal: a basis of `m` and the multiplication table on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinAlgebra {
    name: String,
    labels: Vec<String>,
    /// `table[a * n + b]` is `e_a e_b`.
    table: Vec<SparseVec>,
    nilpotency_index: usize,
    /// `filtration[k]` is `m^{k+1}`; the last entry is the zero space.
    filtration: Vec<Subspace>,
}

impl ArtinAlgebra {
    /// Validates commutativity, associativity and nilpotency.
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        let n = labels.len();
        if table.len() != n * n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!(
                "multiplication table must have {n}x{n} rows of length {n}"
            )));
        }
        let table: Vec<SparseVec> = table.iter().map(|r| crate::dgla::sparse(r)).collect();
        let mut a = ArtinAlgebra {
            name: name.into(),
            labels,
            table,
            nilpotency_index: 0,
            filtration: Vec::new(),
        };
        a.check_laws()?;
        a.compute_filtration()?;
        Ok(a)
    }

    fn check_laws(&self) -> Result<()> {
        let n = self.dim_m();
        for a in 0..n {
            for b in 0..n {
                if self.mul_basis(a, b) != self.mul_basis(b, a) {
                    return Err(Error::InvalidAlgebra(format!(
                        "not commutative on ({}, {})",
                        self.labels[a], self.labels[b]
                    )));
                }
                let ab = self.dense(self.mul_basis(a, b));
                for c in 0..n {
                    let l = self.mul(&ab, &crate::linalg::subspace::unit(n, c));
                    let bc = self.dense(self.mul_basis(b, c));
                    let r = self.mul(&crate::linalg::subspace::unit(n, a), &bc);
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

    fn compute_filtration(&mut self) -> Result<()> {
        let n = self.dim_m();
        let mut powers = vec![Subspace::full(n)];
        loop {
            let last = powers.last().unwrap();
            if last.dim() == 0 {
                break;
            }
            let mut prods = Vec::new();
            for v in last.basis() {
                for b in 0..n {
                    prods.push(self.mul(v, &crate::linalg::subspace::unit(n, b)));
                }
            }
            let next = Subspace::span(n, prods)?;
            if next.dim() == last.dim() {
                return Err(Error::InvalidAlgebra(
                    "maximal ideal is not nilpotent".into(),
                ));
            }
            powers.push(next);
        }
        self.nilpotency_index = powers.len();
        self.filtration = powers;
        Ok(())
    }

    fn dense(&self, s: &[(usize, Scalar)]) -> Vec<Scalar> {
        let mut v = vector::zeros(self.dim_m());
        for (i, c) in s {
            v[*i] = c.clone();
        }
        v
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim_m(&self) -> usize {
        self.labels.len()
    }

    /// Dimension over 𝕂 including the unit.
    pub fn dim(&self) -> usize {
        self.dim_m() + 1
    }

    /// Least `N` with `m^N = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency_index
    }

    /// `[m, m^2, ..., m^N = 0]`.
    pub fn filtration(&self) -> &[Subspace] {
        &self.filtration
    }

    /// `m^k` for `k ≥ 1`.
    pub fn power(&self, k: usize) -> Subspace {
        if k == 0 {
            return Subspace::full(self.dim_m());
        }
        self.filtration
            .get(k - 1)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.dim_m()))
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.table[a * self.dim_m() + b]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vector::zeros(self.dim_m());
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let c = xa * yb;
                for (k, v) in self.mul_basis(a, b) {
                    out[*k] += &c * v;
                }
            }
        }
        out
    }

    /// The table as dense rows, `table[a * n + b]`.
    pub fn dense_table(&self) -> Vec<Vec<Scalar>> {
        self.table.iter().map(|s| self.dense(s)).collect()
    }

    /// `𝕂 ⊕ m` as a unital algebra with basis `1, e_0, e_1, ...`.
    pub fn unitalization(&self) -> AssocAlgebra {
        let n = self.dim_m() + 1;
        let mut labels = vec!["1".to_string()];
        labels.extend(self.labels.iter().cloned());
        let mut table = vec![vector::zeros(n); n * n];
        for a in 0..n {
            table[a] = vector::zeros(n);
            table[a][a] = int(1);
            table[a * n] = vector::zeros(n);
            table[a * n][a] = int(1);
        }
        for a in 0..self.dim_m() {
            for b in 0..self.dim_m() {
                let mut row = vector::zeros(n);
                for (k, v) in self.mul_basis(a, b) {
                    row[k + 1] = v.clone();
                }
                table[(a + 1) * n + b + 1] = row;
            }
        }
        let mut unit = vector::zeros(n);
        unit[0] = int(1);
        AssocAlgebra {
            labels,
            table,
            unit,
        }
    }

    /// The annihilator `{v ∈ m : v·m = 0}`.
    pub fn annihilator(&self) -> Subspace {
        let n = self.dim_m();
        let mut rows = Vec::new();
        for b in 0..n {
            // v ↦ v·e_b as a matrix
            let mut m = Matrix::zeros(n, n);
            for a in 0..n {
                for (k, c) in self.mul_basis(a, b) {
                    m.set(*k, a, c.clone());
                }
            }
            for r in 0..n {
                rows.push(m.row(r).to_vec());
            }
        }
        if rows.is_empty() {
            return Subspace::full(n);
        }
        Matrix::from_rows(rows, n).expect("square").kernel()
    }
}

/// A monomial as an exponent vector.
pub type Monomial = Vec<u32>;

/// Parses `x^2y`, `x*y`, `t^3` over the given variable names.
pub fn parse_monomial(s: &str, vars: &[String]) -> Result<Monomial> {
    let mut exps = vec![0u32; vars.len()];
    let mut order: Vec<usize> = (0..vars.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(vars[i].len()));
    let s: String = s
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '*')
        .collect();
    let mut rest = s.as_str();
    if rest.is_empty() || rest == "1" {
        return Ok(exps);
    }
    while !rest.is_empty() {
        let Some(&v) = order.iter().find(|&&i| rest.starts_with(vars[i].as_str())) else {
            return Err(Error::Parse(format!("cannot read monomial {s:?}")));
        };
        rest = &rest[vars[v].len()..];
        let mut e = 1u32;
        if let Some(r) = rest.strip_prefix('^') {
            let digits: String = r.chars().take_while(|c| c.is_ascii_digit()).collect();
            e = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            rest = &r[digits.len()..];
        }
        exps[v] += e;
    }
    Ok(exps)
}

pub fn monomial_label(m: &Monomial, vars: &[String]) -> String {
    let parts: Vec<String> = m
        .iter()
        .zip(vars)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| {
            if *e == 1 {
                v.clone()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("")
    }
}

fn divides(a: &Monomial, b: &Monomial) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// `𝕂[vars]/(relations)` for a monomial ideal; the basis of `m` consists of
/// the standard monomials ordered by degree, then lexicographically.
pub fn build_truncated_poly(vars: &[&str], relations: &[&str]) -> Result<ArtinAlgebra> {
    monomial_algebra(vars, relations).map(|(a, _)| a)
}

/// As [`build_truncated_poly`], also returning the exponent vector of every
/// basis element of `m`.
pub fn monomial_algebra(
    vars: &[&str],
    relations: &[&str],
) -> Result<(ArtinAlgebra, Vec<Monomial>)> {
    let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let rels: Vec<Monomial> = relations
        .iter()
        .map(|r| parse_monomial(r, &vars))
        .collect::<Result<_>>()?;
    if rels.iter().any(|r| r.iter().all(|e| *e == 0)) {
        return Err(Error::InvalidAlgebra(
            "the ideal contains 1; the ring is zero".into(),
        ));
    }
    let mut bounds = Vec::new();
    for i in 0..vars.len() {
        let pure = rels
            .iter()
            .filter(|r| r.iter().enumerate().all(|(j, e)| j == i || *e == 0))
            .map(|r| r[i])
            .min();
        match pure {
            Some(b) => bounds.push(b),
            None => {
                return Err(Error::InvalidAlgebra(format!(
                    "monomial ideal is not cofinite: no power of {} lies in it",
                    vars[i]
                )))
            }
        }
    }
    let is_standard = |m: &Monomial| !rels.iter().any(|r| divides(r, m));
    let mut monos: Vec<Monomial> = Vec::new();
    let mut cur = vec![0u32; vars.len()];
    loop {
        if cur.iter().any(|e| *e > 0) && is_standard(&cur) {
            monos.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == vars.len() {
                break;
            }
            cur[i] += 1;
            if cur[i] < bounds[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        if i == vars.len() {
            break;
        }
    }
    monos.sort_by(|a, b| {
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    let index: BTreeMap<Monomial, usize> = monos
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let n = monos.len();
    let mut table = vec![vector::zeros(n); n * n];
    for (a, ma) in monos.iter().enumerate() {
        for (b, mb) in monos.iter().enumerate() {
            let p: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            if let Some(&k) = index.get(&p) {
                table[a * n + b][k] = int(1);
            }
        }
    }
    let labels = monos.iter().map(|m| monomial_label(m, &vars)).collect();
    let name = format!("𝕂[{}]/({})", vars.join(","), relations.join(","));
    Ok((ArtinAlgebra::from_table(name, labels, table)?, monos))
}
