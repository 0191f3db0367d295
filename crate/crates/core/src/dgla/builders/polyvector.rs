//! Polyvector fields on `𝕂[x_1..x_n]/(degree > D)` with the
//! Schouten-Nijenhuis bracket: `L^{-1} = A`, `L^k = A ⊗ Λ^{k+1}⟨∂_1..∂_n⟩`.
//!
//! The truncated ring is only closed under the bracket for `D ≤ 1`; larger
//! `D` are accepted and the failure of the Jacobi identity shows up in
//! validation.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::dgla::algebra::{Dgla, DglaBuilder};
use crate::error::{Error, Result};
use crate::linalg::scalar::{int, sign};
use crate::linalg::Scalar;

type Monomial = Vec<u32>;

/// Monomials of total degree at most `d`, ordered by degree then
/// lexicographically with `x_1` largest.
pub fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for deg in 0..=d {
        let mut cur = vec![0; n];
        fill(n, deg, 0, &mut cur, &mut out);
    }
    out
}

fn fill(n: usize, left: u32, pos: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
    if pos + 1 == n || n == 0 {
        if n > 0 {
            cur[pos] = left;
        }
        if n > 0 || left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e;
        fill(n, left - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

pub fn var_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn monomial_label(m: &Monomial, vars: &[String]) -> String {
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

/// Subsets of `{0..n}` of the given size in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// A polynomial in the truncated ring as a sparse map.
type Poly = BTreeMap<Monomial, Scalar>;

struct Ring {
    n: usize,
    d: u32,
}

impl Ring {
    fn mono(&self, m: &Monomial) -> Poly {
        let mut p = Poly::new();
        if m.iter().sum::<u32>() <= self.d {
            p.insert(m.clone(), int(1));
        }
        p
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                if m.iter().sum::<u32>() <= self.d {
                    *out.entry(m).or_default() += ca * cb;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn partial(&self, v: usize, a: &Poly) -> Poly {
        let mut out = Poly::new();
        for (m, c) in a {
            if m[v] > 0 {
                let mut m2 = m.clone();
                m2[v] -= 1;
                *out.entry(m2).or_default() += c * int(m[v] as i64);
            }
        }
        out.retain(|_, c| !c.is_zero());
        let _ = self.n;
        out
    }
}

/// `c · f · ∂_{idx}` with `idx` an arbitrary list; sorted with sign, zero on repeats.
fn wedge_term(
    acc: &mut BTreeMap<(Vec<usize>, Monomial), Scalar>,
    coeff: &Scalar,
    f: &Poly,
    idx: Vec<usize>,
) {
    let mut v = idx;
    let mut s = 1i64;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                s = -s;
            } else if v[j] == v[j + 1] {
                return;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return;
    }
    for (m, c) in f {
        *acc.entry((v.clone(), m.clone())).or_default() += coeff * c * int(s);
    }
}

pub fn build_polyvector(n: usize, d: u32) -> Result<Dgla> {
    if n == 0 {
        return Err(Error::Precondition("need at least one variable".into()));
    }
    let ring = Ring { n, d };
    let vars = var_names(n);
    let monos = monomials(n, d);
    let max = n as i32 - 1;
    let mut b = DglaBuilder::new(format!("POLY{n}_{d}"), -1, max);
    // basis per degree: (subset, monomial); degree -1 has the empty subset
    let mut basis: BTreeMap<i32, Vec<(Vec<usize>, Monomial)>> = BTreeMap::new();
    for k in -1..=max {
        let subs = subsets(n, (k + 1) as usize);
        let mut els = Vec::new();
        for s in &subs {
            for m in &monos {
                els.push((s.clone(), m.clone()));
            }
        }
        let labels = els
            .iter()
            .map(|(s, m)| {
                let ml = monomial_label(m, &vars);
                if s.is_empty() {
                    return ml;
                }
                let w: Vec<String> = s.iter().map(|i| format!("∂{}", vars[*i])).collect();
                if ml == "1" {
                    w.join("∧")
                } else {
                    format!("{ml}·{}", w.join("∧"))
                }
            })
            .collect();
        b.set_degree(k, labels);
        basis.insert(k, els);
    }
    let index: BTreeMap<i32, BTreeMap<(Vec<usize>, Monomial), usize>> = basis
        .iter()
        .map(|(k, els)| {
            (
                *k,
                els.iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, e)| (e, i))
                    .collect(),
            )
        })
        .collect();

    for p in -1..=max {
        for q in -1..=max {
            let t = p + q;
            if t < -1 || t > max {
                continue;
            }
            for (ki, (si, mi)) in basis[&p].iter().enumerate() {
                for (li, (sj, mj)) in basis[&q].iter().enumerate() {
                    let f = ring.mono(mi);
                    let g = ring.mono(mj);
                    let mut acc = BTreeMap::new();
                    if p >= 0 && q >= 0 {
                        schouten(&ring, &f, si, &g, sj, &mut acc);
                    } else if p >= 0 && q == -1 {
                        with_function(&ring, &f, si, &g, &int(1), &mut acc);
                    } else if p == -1 && q >= 0 {
                        with_function(&ring, &g, sj, &f, &-sign(q as i64), &mut acc);
                    }
                    b.add_bracket(p, ki, q, li, 0, Scalar::zero());
                    for (key, c) in acc {
                        if c.is_zero() {
                            continue;
                        }
                        let m = index[&t][&key];
                        b.add_bracket(p, ki, q, li, m, c);
                    }
                }
            }
        }
    }
    b.build()
}

/// `[f∂_I, g∂_J]` writing `ξ_0 = f∂_{I_0}`, `ζ_0 = g∂_{J_0}`.
fn schouten(
    ring: &Ring,
    f: &Poly,
    si: &[usize],
    g: &Poly,
    sj: &[usize],
    acc: &mut BTreeMap<(Vec<usize>, Monomial), Scalar>,
) {
    let (a0, b0) = (si[0], sj[0]);
    // i = 0, j = 0: [f∂a, g∂b] = f ∂a(g) ∂b - g ∂b(f) ∂a
    {
        let mut idx = vec![b0];
        idx.extend_from_slice(&si[1..]);
        idx.extend_from_slice(&sj[1..]);
        wedge_term(acc, &int(1), &ring.mul(f, &ring.partial(a0, g)), idx);
        let mut idx = vec![a0];
        idx.extend_from_slice(&si[1..]);
        idx.extend_from_slice(&sj[1..]);
        wedge_term(acc, &int(-1), &ring.mul(g, &ring.partial(b0, f)), idx);
    }
    // i = 0, j ≥ 1: [f∂a, ∂b] = -∂b(f) ∂a, rest ξ_1..ξ_n ∧ ζ_0..ζ̂_j..
    for j in 1..sj.len() {
        let mut idx = vec![a0];
        idx.extend_from_slice(&si[1..]);
        idx.push(b0);
        idx.extend(
            sj[1..]
                .iter()
                .enumerate()
                .filter(|(t, _)| t + 1 != j)
                .map(|(_, x)| *x),
        );
        let coef = -sign(j as i64);
        wedge_term(acc, &coef, &ring.mul(g, &ring.partial(sj[j], f)), idx);
    }
    // i ≥ 1, j = 0: [∂a, g∂b] = ∂a(g) ∂b, rest ξ_0..ξ̂_i.. ∧ ζ_1..
    for i in 1..si.len() {
        let mut idx = vec![b0, a0];
        idx.extend(
            si[1..]
                .iter()
                .enumerate()
                .filter(|(t, _)| t + 1 != i)
                .map(|(_, x)| *x),
        );
        idx.extend_from_slice(&sj[1..]);
        let coef = sign(i as i64);
        wedge_term(acc, &coef, &ring.mul(f, &ring.partial(si[i], g)), idx);
    }
}

/// `s · [f∂_I, h]` with `[ξ_0..ξ_n, h] = Σ (-1)^{n-i} ξ_i(h) ξ_0..ξ̂_i..ξ_n`.
fn with_function(
    ring: &Ring,
    f: &Poly,
    si: &[usize],
    h: &Poly,
    s: &Scalar,
    acc: &mut BTreeMap<(Vec<usize>, Monomial), Scalar>,
) {
    let n = si.len() - 1;
    for i in 0..=n {
        let coef = s * sign((n - i) as i64);
        let idx: Vec<usize> = si
            .iter()
            .enumerate()
            .filter(|(t, _)| *t != i)
            .map(|(_, x)| *x)
            .collect();
        wedge_term(acc, &coef, &ring.mul(f, &ring.partial(si[i], h)), idx);
    }
}
