use std::fmt;

use num_traits::Zero;

use super::algebra::Dgla;
use crate::linalg::scalar::sign;
use crate::linalg::{vector, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    DegreeMismatch,
    SquareZero,
    Antisymmetry,
    Jacobi,
    Leibniz,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Identity::DegreeMismatch => "degree",
            Identity::SquareZero => "d∘d",
            Identity::Antisymmetry => "antisymmetry",
            Identity::Jacobi => "jacobi",
            Identity::Leibniz => "leibniz",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: Identity,
    /// Basis labels of the offending tuple.
    pub tuple: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, identity: Identity, tuple: &[&str]) -> bool {
        self.violations.iter().any(|v| {
            v.identity == identity && v.tuple.iter().map(String::as_str).eq(tuple.iter().copied())
        })
    }
}

/// Exhaustive check of the DGLA axioms on basis tuples whose outputs stay
/// inside the known part of the window.
pub fn validate_dgla(l: &Dgla) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let lab = |d: i32, k: usize| l.label(d, k).to_string();

    for s in l.stray_entries() {
        rep.violations.push(Violation {
            identity: Identity::DegreeMismatch,
            tuple: vec![lab(s.left.0, s.left.1), lab(s.right.0, s.right.1)],
        });
    }

    let degrees: Vec<i32> = l.space().degrees().collect();

    for &i in &degrees {
        let (Some(a), Some(b)) = (l.diff_block(i), l.diff_block(i + 1)) else {
            continue;
        };
        let dd = b.mul(a).expect("shapes checked");
        for k in 0..l.dim(i) {
            rep.checked += 1;
            if (0..dd.rows()).any(|r| !dd.get(r, k).is_zero()) {
                rep.violations.push(Violation {
                    identity: Identity::SquareZero,
                    tuple: vec![lab(i, k)],
                });
            }
        }
    }

    for &i in &degrees {
        for &j in &degrees {
            if !l.can_bracket(i, j) {
                continue;
            }
            let s = sign((i * j) as i64);
            for k in 0..l.dim(i) {
                for m in 0..l.dim(j) {
                    if i == j && m < k {
                        continue;
                    }
                    rep.checked += 1;
                    let ab = l.bracket_basis(i, k, j, m).unwrap();
                    let ba = l.bracket_basis(j, m, i, k).unwrap();
                    let mut sum = vector::zeros(l.dim(i + j));
                    for (t, c) in ab {
                        sum[*t] += c;
                    }
                    for (t, c) in ba {
                        sum[*t] += &s * c;
                    }
                    if !vector::is_zero(&sum) {
                        rep.violations.push(Violation {
                            identity: Identity::Antisymmetry,
                            tuple: vec![lab(i, k), lab(j, m)],
                        });
                    }
                }
            }
        }
    }

    for &i in &degrees {
        for &j in &degrees {
            for &k in &degrees {
                let needed = [(j, k), (i, j + k), (i, j), (i + j, k), (i, k), (j, i + k)];
                if !needed.iter().all(|&(a, b)| l.can_bracket(a, b)) {
                    continue;
                }
                let s = sign((i * j) as i64);
                let mut terms: Vec<(usize, Scalar)> = Vec::new();
                for a in 0..l.dim(i) {
                    for b in 0..l.dim(j) {
                        let ab = l.bracket_basis(i, a, j, b).unwrap();
                        for c in 0..l.dim(k) {
                            rep.checked += 1;
                            let bc = l.bracket_basis(j, b, k, c).unwrap();
                            let ac = l.bracket_basis(i, a, k, c).unwrap();
                            if ab.is_empty() && bc.is_empty() && ac.is_empty() {
                                continue;
                            }
                            // [a,[b,c]] - [[a,b],c] - s[b,[a,c]]
                            terms.clear();
                            for (t, x) in bc {
                                for (m, y) in l.bracket_basis(i, a, j + k, *t).unwrap() {
                                    terms.push((*m, x * y));
                                }
                            }
                            for (t, x) in ab {
                                for (m, y) in l.bracket_basis(i + j, *t, k, c).unwrap() {
                                    terms.push((*m, -(x * y)));
                                }
                            }
                            for (t, x) in ac {
                                for (m, y) in l.bracket_basis(j, b, i + k, *t).unwrap() {
                                    terms.push((*m, -(&s * x * y)));
                                }
                            }
                            if !cancels(&mut terms) {
                                rep.violations.push(Violation {
                                    identity: Identity::Jacobi,
                                    tuple: vec![lab(i, a), lab(j, b), lab(k, c)],
                                });
                            }
                        }
                    }
                }
            }
        }
    }

    for &i in &degrees {
        for &j in &degrees {
            let ok = l.can_bracket(i, j)
                && l.can_bracket(i + 1, j)
                && l.can_bracket(i, j + 1)
                && l.can_differentiate(i)
                && l.can_differentiate(j)
                && l.can_differentiate(i + j);
            if !ok {
                continue;
            }
            let s = sign(i as i64);
            for a in 0..l.dim(i) {
                let ea = crate::linalg::subspace::unit(l.dim(i), a);
                let da = l.d(i, &ea).unwrap();
                for b in 0..l.dim(j) {
                    rep.checked += 1;
                    let eb = crate::linalg::subspace::unit(l.dim(j), b);
                    let db = l.d(j, &eb).unwrap();
                    let lhs = l.d(i + j, &l.bracket(i, &ea, j, &eb).unwrap()).unwrap();
                    let mut rhs = l.bracket(i + 1, &da, j, &eb).unwrap();
                    let t = l.bracket(i, &ea, j + 1, &db).unwrap();
                    vector::axpy(&mut rhs, &s, &t);
                    if lhs != rhs {
                        rep.violations.push(Violation {
                            identity: Identity::Leibniz,
                            tuple: vec![lab(i, a), lab(j, b)],
                        });
                    }
                }
            }
        }
    }
    rep
}

/// Whether a list of `(index, coefficient)` terms sums to zero.
fn cancels(terms: &mut [(usize, Scalar)]) -> bool {
    terms.sort_unstable_by_key(|(m, _)| *m);
    let mut start = 0;
    while start < terms.len() {
        let m = terms[start].0;
        let mut sum = Scalar::zero();
        let mut end = start;
        while end < terms.len() && terms[end].0 == m {
            sum += &terms[end].1;
            end += 1;
        }
        if !sum.is_zero() {
            return false;
        }
        start = end;
    }
    true
}
