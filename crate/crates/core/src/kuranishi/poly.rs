use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use super::map::Kuranishi;
use super::split::HodgeSplit;
use crate::artin::{monomial_algebra, ArtinAlgebra, Monomial};
use crate::dgla::Dgla;
use crate::error::{Error, Result};
use crate::linalg::scalar::{int, scalar_to_json};
use crate::linalg::{vector, Scalar};

/// Default total-degree cap.
pub const DEFAULT_ORDER: usize = 6;
/// Largest number of monomials the generic ring may have.
pub const MONOMIAL_BUDGET: usize = 20_000;

/// `q: H¹ → H²` as polynomials truncated above `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedMap {
    pub h1: usize,
    pub h2: usize,
    pub order: usize,
    pub polys: Vec<BTreeMap<Monomial, Scalar>>,
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Taylor coefficients of `q(u) = H[F⁻¹(Σ uᵢhᵢ), F⁻¹(Σ uᵢhᵢ)]` computed over
/// `𝕂[u₁…u_{h₁}]/(degree > order)`.
pub fn kuranishi_polynomials(l: &Dgla, order: usize) -> Result<TruncatedMap> {
    let split = HodgeSplit::new(l)?;
    let h1 = split.degree(1)?.h.clone();
    let h2 = split.degree(2)?;
    let k = h1.dim();
    let mut map = TruncatedMap {
        h1: k,
        h2: h2.dim_h(),
        order,
        polys: vec![BTreeMap::new(); h2.dim_h()],
    };
    if k == 0 || h2.dim_h() == 0 || order < 2 {
        return Ok(map);
    }
    if binomial(k + order, order) > MONOMIAL_BUDGET {
        return Err(Error::CapOverflow(format!(
            "{k} variables up to degree {order} exceed the monomial budget {MONOMIAL_BUDGET}"
        )));
    }
    let vars: Vec<String> = (1..=k).map(|i| format!("u{i}")).collect();
    let rels = all_monomials(k, order + 1)
        .iter()
        .map(|m| monomial_string(m, &vars))
        .collect::<Vec<_>>();
    let vr: Vec<&str> = vars.iter().map(String::as_str).collect();
    let rr: Vec<&str> = rels.iter().map(String::as_str).collect();
    let (ring, monos) = monomial_algebra(&vr, &rr)?;
    let kur = Kuranishi::with_split(&split, &ring)?;
    let n = ring.dim_m();
    let mut x = kur.t.zero(1);
    for (i, h) in h1.basis().iter().enumerate() {
        let mut ui = vector::zeros(n);
        let mut e = vec![0u32; k];
        e[i] = 1;
        let pos = monos.iter().position(|m| *m == e).expect("linear monomial");
        ui[pos] = int(1);
        x = x.add(&kur.t.pure(1, h, &ui)?);
    }
    let z = kur.f_inverse(&x)?;
    let sq = kur.t.bracket(&z, &z)?;
    let d2 = l.dim(2);
    for (al, mono) in monos.iter().enumerate().take(n) {
        let v: Vec<Scalar> = (0..d2).map(|r| sq.coeffs[r * n + al].clone()).collect();
        let c = h2.h_coords(&v);
        for (r, coeff) in c.into_iter().enumerate() {
            if !coeff.is_zero() {
                map.polys[r].insert(mono.clone(), coeff);
            }
        }
    }
    Ok(map)
}

fn all_monomials(k: usize, degree: usize) -> Vec<Monomial> {
    fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() == k - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(k, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, degree as u32, &mut Vec::new(), &mut out);
    out
}

fn monomial_string(m: &Monomial, vars: &[String]) -> String {
    m.iter()
        .zip(vars)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| format!("{v}^{e}*"))
        .collect::<String>()
        .trim_end_matches('*')
        .to_string()
}

impl TruncatedMap {
    /// `q(a₁, …, a_k)` with `aᵢ ∈ m_A`; valid when `m_A^{order+1} = 0`.
    pub fn evaluate(&self, ring: &ArtinAlgebra, args: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
        if args.len() != self.h1 {
            return Err(Error::Shape("wrong number of arguments".into()));
        }
        if ring.nilpotency_index() > self.order + 1 {
            return Err(Error::Precondition(format!(
                "ring needs order ≥ {}, map is truncated at {}",
                ring.nilpotency_index() - 1,
                self.order
            )));
        }
        let n = ring.dim_m();
        let mut out = Vec::new();
        for p in &self.polys {
            let mut acc = vector::zeros(n);
            for (m, c) in p {
                let mut term: Option<Vec<Scalar>> = None;
                for (i, e) in m.iter().enumerate() {
                    for _ in 0..*e {
                        term = Some(match term {
                            None => args[i].clone(),
                            Some(t) => ring.mul(&t, &args[i]),
                        });
                    }
                }
                let t = term.unwrap_or_else(|| vector::zeros(n));
                vector::axpy(&mut acc, c, &t);
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// `{"q1": {"[2]": 1}, …}`.
    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        for (r, p) in self.polys.iter().enumerate() {
            let mut terms = serde_json::Map::new();
            for (m, c) in p {
                terms.insert(
                    serde_json::to_string(m).expect("exponents"),
                    scalar_to_json(c),
                );
            }
            obj.insert(format!("q{}", r + 1), Value::Object(terms));
        }
        json!(obj)
    }
}
