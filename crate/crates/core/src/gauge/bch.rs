use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;

use crate::error::Result;
use crate::linalg::scalar::{int, inv_factorial, ratio};
use crate::linalg::Scalar;

/// A nilpotent Lie algebra in which every bracket of `nilpotency()` or more
/// elements vanishes.
pub trait NilpotentLie {
    type Elem: Clone + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Scalar, a: &Self::Elem) -> Self::Elem;
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn nilpotency(&self) -> usize;
}

/// Dynkin coefficient of every word in `X`, `Y` (`false`, `true`) up to the
/// given length, for the right-nested bracket `[w₁,[w₂,…,w_m]]`.
fn dynkin_coefficients(max_len: usize) -> Vec<(Vec<bool>, Scalar)> {
    type Words = Vec<(Vec<bool>, Scalar)>;
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Words>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(v) = cache.lock().expect("cache").get(&max_len) {
        return v.clone();
    }
    let mut out = Vec::new();
    for len in 1..=max_len {
        for bits in 0..(1u64 << len) {
            let w: Vec<bool> = (0..len).map(|i| bits >> (len - 1 - i) & 1 == 1).collect();
            if len >= 2 && w[len - 1] == w[len - 2] {
                continue;
            }
            let c = word_coefficient(&w);
            if !c.is_zero() {
                out.push((w, c));
            }
        }
    }
    cache.lock().expect("cache").insert(max_len, out.clone());
    out
}

/// `Σ over splittings of w into blocks X^r Y^s (r+s>0) of
/// (−1)^{n−1} / (n · |w| · Π r_i! s_i!)`.
fn word_coefficient(w: &[bool]) -> Scalar {
    fn rec(w: &[bool], pos: usize, blocks: i64, acc: Scalar, total: &mut Scalar, len: usize) {
        if pos == w.len() {
            let n = blocks;
            let sgn = if n % 2 == 1 { int(1) } else { int(-1) };
            *total += sgn * acc * ratio(1, n * len as i64);
            return;
        }
        let mut r = 0;
        while pos + r < w.len() && !w[pos + r] {
            r += 1;
        }
        // a block takes r' ≤ r X's, and only if it takes all r may it take Y's
        for rr in 0..=r {
            let mut s_max = 0;
            if rr == r {
                while pos + r + s_max < w.len() && w[pos + r + s_max] {
                    s_max += 1;
                }
            }
            for s in 0..=s_max {
                if rr + s == 0 {
                    continue;
                }
                let f = inv_factorial(rr) * inv_factorial(s);
                rec(w, pos + rr + s, blocks + 1, &acc * f, total, len);
            }
        }
    }
    let mut total = Scalar::zero();
    rec(w, 0, 0, int(1), &mut total, w.len());
    total
}

/// `log(e^a e^b)` by the Dynkin series.
pub fn bch<L: NilpotentLie>(l: &L, a: &L::Elem, b: &L::Elem) -> Result<L::Elem> {
    let max_len = l.nilpotency().saturating_sub(1).max(1);
    let words = dynkin_coefficients(max_len);
    let mut memo: BTreeMap<Vec<bool>, L::Elem> = BTreeMap::new();
    let mut out = l.zero();
    for (w, c) in &words {
        let v = nested(l, w, a, b, &mut memo)?;
        if !l.is_zero(&v) {
            out = l.add(&out, &l.scale(c, &v));
        }
    }
    Ok(out)
}

fn nested<L: NilpotentLie>(
    l: &L,
    w: &[bool],
    a: &L::Elem,
    b: &L::Elem,
    memo: &mut BTreeMap<Vec<bool>, L::Elem>,
) -> Result<L::Elem> {
    if let Some(v) = memo.get(w) {
        return Ok(v.clone());
    }
    let head = if w[0] { b } else { a };
    let v = if w.len() == 1 {
        head.clone()
    } else {
        let rest = nested(l, &w[1..], a, b, memo)?;
        if l.is_zero(&rest) {
            rest
        } else {
            l.bracket(head, &rest)?
        }
    };
    memo.insert(w.to_vec(), v.clone());
    Ok(v)
}

pub fn neg<L: NilpotentLie>(l: &L, a: &L::Elem) -> L::Elem {
    l.scale(&int(-1), a)
}

/// `Σ_{n≥0} (ad a)^n v / (n + k)!`, stopping once a term vanishes.
pub fn ad_series<L: NilpotentLie>(l: &L, a: &L::Elem, v: &L::Elem, k: usize) -> Result<L::Elem> {
    let mut out = l.scale(&inv_factorial(k), v);
    let mut term = v.clone();
    for n in 1..=l.nilpotency() {
        term = l.bracket(a, &term)?;
        if l.is_zero(&term) {
            break;
        }
        out = l.add(&out, &l.scale(&inv_factorial(n + k), &term));
    }
    Ok(out)
}
