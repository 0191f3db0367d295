use super::omega::OmegaElement;
use super::path::{PathSpace, PolyPath};
use crate::error::{Error, Result};
use crate::gauge::{bch, exp_action, NilpotentLie};
use crate::linalg::scalar::{int, ratio};
use crate::linalg::Scalar;
use crate::mc::equation::require_degree;
use crate::mc::TensorElement;
use crate::rng::Lcg;

/// `L⁰⊗m_A[t]` extended by `h` with `h² = 0`; elements are `(u, v)` for
/// `u + h·v`.
struct FirstOrder<'a>(&'a PathSpace);

impl NilpotentLie for FirstOrder<'_> {
    type Elem = (PolyPath, PolyPath);

    fn zero(&self) -> Self::Elem {
        (self.0.zero(0), self.0.zero(0))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (
            self.0.add(&a.0, &b.0).expect("cap"),
            self.0.add(&a.1, &b.1).expect("cap"),
        )
    }

    fn scale(&self, c: &Scalar, a: &Self::Elem) -> Self::Elem {
        (
            self.0.scale(c, &a.0).expect("cap"),
            self.0.scale(c, &a.1).expect("cap"),
        )
    }

    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let s = self.0;
        let u = s.bracket(&a.0, &b.0)?;
        let v = s.add(&s.bracket(&a.0, &b.1)?, &s.bracket(&a.1, &b.0)?)?;
        Ok((u, v))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.0.is_zero() && a.1.is_zero()
    }

    fn nilpotency(&self) -> usize {
        self.0.t.ring().nilpotency_index()
    }
}

/// `γ_p` with `e^{p(t+h)}e^{−p(t)} = e^{h(p′+γ_p) + O(h²)}`.
pub fn bch_gamma(s: &PathSpace, p: &PolyPath) -> Result<PolyPath> {
    if p.degree != 0 {
        return Err(Error::Degree {
            expected: 0,
            found: p.degree,
        });
    }
    let dp = s.derivative(p)?;
    let alg = FirstOrder(s);
    let z = bch(&alg, &(p.clone(), dp.clone()), &(s.neg(p)?, s.zero(0)))?;
    if !z.0.is_zero() {
        return Err(Error::Internal("e^p e^{−p} ≠ 1".into()));
    }
    s.sub(&z.1, &dp)
}

/// `p′ + γ_p`.
pub fn gauge_ode_lhs(s: &PathSpace, p: &PolyPath) -> Result<PolyPath> {
    s.add(&s.derivative(p)?, &bch_gamma(s, p)?)
}

/// The unique `p` with `p(0) = 0` and `p′ + γ_p = b`, built level by level
/// along the `m_A`-adic filtration of `L⁰⊗m_A`. When `rng` is given every
/// level starts from a randomly shifted lift.
pub fn solve_gauge_ode(s: &PathSpace, b: &PolyPath, mut rng: Option<&mut Lcg>) -> Result<PolyPath> {
    if b.degree != 0 {
        return Err(Error::Degree {
            expected: 0,
            found: b.degree,
        });
    }
    let ring = s.t.ring();
    let top = b.t_degree().map_or(1, |d| d + 1);
    let mut p = s.zero(0);
    for k in 1..ring.nilpotency_index() {
        let mut lift = p.clone();
        if let Some(r) = rng.as_deref_mut() {
            lift = s.add(&lift, &random_level_path(s, k, top, r)?)?;
        }
        let chi = s.sub(b, &gauge_ode_lhs(s, &lift)?)?;
        p = s.add(&lift, &s.integral(&chi)?)?;
    }
    if gauge_ode_lhs(s, &p)? != *b {
        return Err(Error::Internal(
            "gauge ODE solution failed re-substitution".into(),
        ));
    }
    Ok(p)
}

/// A path in `L⁰⊗m^k` with no constant term.
fn random_level_path(s: &PathSpace, k: usize, top: usize, rng: &mut Lcg) -> Result<PolyPath> {
    let n0 = s.t.base().dim(0);
    let level = s.t.ring().power(k);
    let mut coeffs = vec![s.t.zero(0)];
    for _ in 1..=top {
        let mut c = s.t.zero(0);
        for m in level.basis() {
            c = c.add(&s.t.pure(0, &rng.vector(n0), m)?);
        }
        coeffs.push(c);
    }
    s.path(0, coeffs)
}

/// `a(t) = e^{tg} * x`, `b(t) = −g`.
pub fn homotopy_from_gauge(
    s: &PathSpace,
    g: &TensorElement,
    x: &TensorElement,
    y: &TensorElement,
) -> Result<OmegaElement> {
    require_degree(g, 0)?;
    require_degree(x, 1)?;
    if exp_action(&s.t, g, x)? != *y {
        return Err(Error::Precondition("e^g * x ≠ y".into()));
    }
    let mut coeffs = vec![x.clone()];
    let mut term = s.t.bracket(g, x)?.sub(&s.t.d(g)?);
    let mut n = 1;
    while !term.is_zero() {
        coeffs.push(term.clone());
        n += 1;
        term = s.t.bracket(g, &term)?.scale(&ratio(1, n));
    }
    let w = s.omega(s.path(1, coeffs)?, s.constant(&g.neg())?)?;
    if !s.mc_omega_check(&w)?.ok() || s.evaluate_omega(&w, &int(1)) != *y {
        return Err(Error::Internal("gauge path does not verify".into()));
    }
    Ok(w)
}

/// `g = p(1)` where `p′ + γ_p = −b` solves the flow of the homotopy.
pub fn gauge_from_homotopy(s: &PathSpace, w: &OmegaElement) -> Result<TensorElement> {
    if !s.mc_omega_check(w)?.ok() {
        return Err(Error::Precondition("path is not Maurer-Cartan in Ω".into()));
    }
    let p = solve_gauge_ode(s, &s.neg(&w.b)?, None)?;
    let g = s.evaluate(&p, &int(1));
    let (x, y) = (s.evaluate_omega(w, &int(0)), s.evaluate_omega(w, &int(1)));
    if exp_action(&s.t, &g, &x)? != y {
        return Err(Error::Internal(
            "recovered gauge does not join the endpoints".into(),
        ));
    }
    Ok(g)
}
