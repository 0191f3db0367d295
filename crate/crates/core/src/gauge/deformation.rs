use num_traits::Zero;

use super::action::{exp_action, gauge_bch};
use crate::artin::{small_extension_tower, ArtinAlgebra, SmallExtension};
use crate::dgla::{Dgla, DglaMorphism};
use crate::error::{Error, Result};
use crate::graded::DegreeCohomology;
use crate::kuranishi::Kuranishi;
use crate::linalg::scalar::int;
use crate::linalg::subspace::unit;
use crate::linalg::{vector, Matrix, Scalar, Subspace};
use crate::mc::equation::require_degree;
use crate::mc::{mc_check, LiftingProblem, TensorDgla, TensorElement};

/// `H¹(L)` with its splitting.
pub fn def_tangent(l: &Dgla) -> Result<DegreeCohomology> {
    l.cohomology_degree(1)
}

/// Image of `b ↦ e^{bε} * 0` in `L¹`, read off the `ε` coefficient.
pub fn tangent_gauge_image(l: &Dgla) -> Result<Subspace> {
    let eps = crate::artin::parse_ring("eps")?;
    let t = TensorDgla::new(l, &eps)?;
    let mut imgs = Vec::new();
    for k in 0..l.dim(0) {
        let b = t.pure(0, &unit(l.dim(0), k), &[int(1)])?;
        let moved = exp_action(&t, &b, &t.zero(1))?;
        imgs.push(moved.coeffs);
    }
    Subspace::span(l.dim(1), imgs)
}

/// The `H¹⊗M` class measuring whether `e^g * x = y` lifts to the given
/// lifts `x′, y′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoObstruction {
    /// `coords[r][μ]`, as for Maurer-Cartan obstructions.
    pub coords: Vec<Vec<Scalar>>,
    /// `e^{g′} * x′ − y′` for the section lift `g′`.
    pub difference: TensorElement,
    pub lifted_gauge: TensorElement,
}

impl IsoObstruction {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().flatten().all(Zero::is_zero)
    }
}

fn class_in_h1(p: &LiftingProblem, diff: &TensorElement) -> Result<Vec<Vec<Scalar>>> {
    let comps = p.ideal_components(diff)?;
    let l = p.base();
    let h1 = l.cohomology_degree(1)?;
    if l.can_differentiate(1) {
        for c in &comps {
            if !l.d(1, c)?.iter().all(Zero::is_zero) {
                return Err(Error::Internal("difference of lifts is not closed".into()));
            }
        }
    }
    let per_mu: Vec<Vec<Scalar>> = comps
        .iter()
        .map(|c| h1.class_of(c))
        .collect::<Result<_>>()?;
    Ok((0..h1.dim_h())
        .map(|r| per_mu.iter().map(|v| v[r].clone()).collect())
        .collect())
}

pub fn iso_obstruction(
    l: &Dgla,
    ext: &SmallExtension,
    g: &TensorElement,
    x: &TensorElement,
    y: &TensorElement,
    x_lift: &TensorElement,
    y_lift: &TensorElement,
) -> Result<IsoObstruction> {
    require_degree(g, 0)?;
    let p = LiftingProblem::new(l, ext)?;
    if exp_action(&p.over_a, g, x)? != *y {
        return Err(Error::Precondition("e^g * x ≠ y".into()));
    }
    for (lift, low) in [(x_lift, x), (y_lift, y)] {
        if !mc_check(&p.over_b, lift)? {
            return Err(Error::NotMaurerCartan(p.over_b.describe(lift)));
        }
        if p.project(lift)? != *low {
            return Err(Error::Precondition(
                "lift does not reduce to the given element".into(),
            ));
        }
    }
    let lifted_gauge = p.section_lift(g)?;
    let difference = exp_action(&p.over_b, &lifted_gauge, x_lift)?.sub(y_lift);
    let coords = class_in_h1(&p, &difference)?;
    // any other lift of g moves the difference by a coboundary
    let mut bump = vec![vec![Scalar::zero(); l.dim(0)]; ext.ideal_dim()];
    if let Some(first) = bump.first_mut() {
        for (k, c) in first.iter_mut().enumerate() {
            *c = int(k as i64 + 1);
        }
    }
    let other = lifted_gauge.add(&p.from_ideal_components(0, &bump)?);
    let diff2 = exp_action(&p.over_b, &other, x_lift)?.sub(y_lift);
    if class_in_h1(&p, &diff2)? != coords {
        return Err(Error::Internal(
            "Iso obstruction depends on the lift of g".into(),
        ));
    }
    Ok(IsoObstruction {
        coords,
        difference,
        lifted_gauge,
    })
}

/// Basis of `{[a,b] + db : b ∈ L⁻¹⊗m_A}` and whether it is closed under
/// the bracket.
#[derive(Clone, Debug)]
pub struct IrrelevantSubalgebra {
    pub basis: Vec<TensorElement>,
    pub closed: bool,
}

pub fn irrelevant_subalgebra(t: &TensorDgla, a: &TensorElement) -> Result<IrrelevantSubalgebra> {
    require_degree(a, 1)?;
    if !mc_check(t, a)? {
        return Err(Error::NotMaurerCartan(t.describe(a)));
    }
    let n = t.dim(-1);
    let mut imgs = Vec::new();
    for k in 0..n {
        let b = TensorElement {
            degree: -1,
            coeffs: unit(n, k),
        };
        imgs.push(t.bracket(a, &b)?.add(&t.d(&b)?).coeffs);
    }
    let span = Subspace::span(t.dim(0), imgs)?;
    let basis: Vec<TensorElement> = span
        .rref_basis()
        .into_iter()
        .map(|coeffs| TensorElement { degree: 0, coeffs })
        .collect();
    let mut closed = true;
    for u in &basis {
        for v in &basis {
            if !span.contains(&t.bracket(u, v)?.coeffs) {
                closed = false;
            }
        }
    }
    Ok(IrrelevantSubalgebra { basis, closed })
}

/// Why two elements are not gauge equivalent: over the quotient at tower
/// step `step` the normal forms first differ, by a nonzero class in `H¹⊗M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequivalence {
    pub step: usize,
    pub ring: String,
    pub coords: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equivalent { witness: TensorElement },
    NotEquivalent { certificate: Inequivalence },
    Unknown { diagnostic: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceDecision {
    pub verdict: Verdict,
    /// `H⁰(L) = 0`, so normal forms decide equivalence.
    pub complete: bool,
}

/// Node budget for the witness search when `H⁰(L) ≠ 0`.
pub const DEFAULT_SEARCH_BUDGET: usize = 2000;

struct Level {
    problem: LiftingProblem,
    x: TensorElement,
    y: TensorElement,
}

pub fn gauge_equivalent(
    l: &Dgla,
    a: &ArtinAlgebra,
    x: &TensorElement,
    y: &TensorElement,
    budget: usize,
) -> Result<EquivalenceDecision> {
    let k = Kuranishi::new(l, a)?;
    for e in [x, y] {
        require_degree(e, 1)?;
        if !mc_check(&k.t, e)? {
            return Err(Error::NotMaurerCartan(k.t.describe(e)));
        }
    }
    let complete = l.cohomology_degree(0)?.dim_h() == 0;
    let (gx, nx) = k.gauge_normalize(x)?;
    let (gy, ny) = k.gauge_normalize(y)?;
    if nx == ny {
        let witness = gauge_bch(&k.t, &gy.neg(), &gx)?;
        return equivalent(&k.t, witness, x, y, complete);
    }
    let tower = small_extension_tower(a)?;
    let levels = descend(l, &tower, x, y)?;
    if complete {
        let certificate = separate(l, &tower, &nx, &ny)?;
        return Ok(EquivalenceDecision {
            verdict: Verdict::NotEquivalent { certificate },
            complete,
        });
    }
    let mut left = budget;
    let start = TensorDgla::new(
        l,
        &tower
            .last()
            .map(|s| s.quotient.clone())
            .unwrap_or_else(|| a.clone()),
    )?
    .zero(0);
    let found = search(l, &levels, levels.len(), start, &mut left)?;
    Ok(match found {
        Some(w) => return equivalent(&k.t, w, x, y, complete),
        None if left == 0 => EquivalenceDecision {
            verdict: Verdict::Unknown {
                diagnostic: format!("witness search exhausted its budget of {budget} nodes"),
            },
            complete,
        },
        None => EquivalenceDecision {
            verdict: Verdict::Unknown {
                diagnostic:
                    "no witness among the searched corrections; H⁰ ≠ 0 so this is not a proof"
                        .into(),
            },
            complete,
        },
    })
}

fn equivalent(
    t: &TensorDgla,
    witness: TensorElement,
    x: &TensorElement,
    y: &TensorElement,
    complete: bool,
) -> Result<EquivalenceDecision> {
    if exp_action(t, &witness, x)? != *y {
        return Err(Error::Internal(
            "equivalence witness does not verify".into(),
        ));
    }
    Ok(EquivalenceDecision {
        verdict: Verdict::Equivalent { witness },
        complete,
    })
}

/// Images of `x, y` over every ring of the tower, top first.
fn descend(
    l: &Dgla,
    tower: &[SmallExtension],
    x: &TensorElement,
    y: &TensorElement,
) -> Result<Vec<Level>> {
    let (mut x, mut y) = (x.clone(), y.clone());
    let mut out = Vec::new();
    for step in tower {
        let problem = LiftingProblem::new(l, step)?;
        let (px, py) = (problem.project(&x)?, problem.project(&y)?);
        out.push(Level { problem, x, y });
        x = px;
        y = py;
    }
    Ok(out)
}

fn separate(
    l: &Dgla,
    tower: &[SmallExtension],
    nx: &TensorElement,
    ny: &TensorElement,
) -> Result<Inequivalence> {
    let levels = descend(l, tower, nx, ny)?;
    for (step, lv) in levels.iter().enumerate() {
        let diff = lv.x.sub(&lv.y);
        if diff.is_zero() {
            continue;
        }
        if !lv.problem.project(&diff)?.is_zero() {
            continue;
        }
        let coords = class_in_h1(&lv.problem, &diff)?;
        if coords.iter().flatten().all(Zero::is_zero) {
            return Err(Error::Internal(
                "normal forms differ by a coboundary".into(),
            ));
        }
        return Ok(Inequivalence {
            step,
            ring: lv.problem.ext.total.name().to_string(),
            coords,
        });
    }
    Err(Error::Internal(
        "distinct normal forms agree at every level".into(),
    ))
}

/// The particular correction of `g` over the total ring of `lv`, or the
/// nonzero `H¹` class blocking it.
fn extend(
    l: &Dgla,
    lv: &Level,
    g: &TensorElement,
) -> Result<std::result::Result<TensorElement, Vec<Scalar>>> {
    let p = &lv.problem;
    let lifted = p.section_lift(g)?;
    let diff = exp_action(&p.over_b, &lifted, &lv.x)?.sub(&lv.y);
    let comps = p.ideal_components(&diff)?;
    let d0 = l
        .diff_block(0)
        .ok_or_else(|| Error::Window("the differential out of degree 0 is unknown".into()))?;
    let mut fix = Vec::new();
    for c in &comps {
        match d0.solve_affine(c)? {
            Some(s) => fix.push(s.particular),
            None => return Ok(Err(class_in_h1(p, &diff)?.into_iter().flatten().collect())),
        }
    }
    Ok(Ok(lifted.add(&p.from_ideal_components(0, &fix)?)))
}

/// Greedy extension of `g` (over the total ring of `levels[i]`) through the
/// levels above; stops at `stop` or at the first blocked level.
fn rollout(
    l: &Dgla,
    levels: &[Level],
    i: usize,
    stop: usize,
    g: &TensorElement,
) -> Result<std::result::Result<TensorElement, (usize, Vec<Scalar>)>> {
    let mut g = g.clone();
    for k in (stop..i).rev() {
        match extend(l, &levels[k], &g)? {
            Ok(next) => g = next,
            Err(class) => return Ok(Err((k, class))),
        }
    }
    Ok(Ok(g))
}

/// Extends a witness over the quotient of `levels[i-1]` to its total ring,
/// trying linearized corrections aimed at the first blocked level above,
/// then small `Z⁰⊗M` shifts.
fn search(
    l: &Dgla,
    levels: &[Level],
    i: usize,
    g: TensorElement,
    left: &mut usize,
) -> Result<Option<TensorElement>> {
    if i == 0 {
        return Ok(Some(g));
    }
    if *left == 0 {
        return Ok(None);
    }
    *left -= 1;
    let p = &levels[i - 1].problem;
    let Ok(base) = extend(l, &levels[i - 1], &g)? else {
        return Ok(None);
    };
    let shifts = shifts(l, p)?;
    let mut cands = Vec::new();
    if i >= 2 {
        match rollout(l, levels, i - 1, 0, &base)? {
            Ok(w) => return Ok(Some(w)),
            Err((k, _)) => cands.extend(lookahead(l, levels, i - 1, k, &base, &shifts)?),
        }
    }
    cands.extend(shifts.iter().map(|z| base.add(z)));
    for cand in cands {
        if let Some(w) = search(l, levels, i - 1, cand, left)? {
            return Ok(Some(w));
        }
        if *left == 0 {
            break;
        }
    }
    Ok(None)
}

/// Class at level `k` after a greedy rollout, if nothing blocks earlier.
fn class_at(
    l: &Dgla,
    levels: &[Level],
    i: usize,
    k: usize,
    g: &TensorElement,
) -> Result<Option<Vec<Scalar>>> {
    Ok(match rollout(l, levels, i, k + 1, g)? {
        Ok(top) => match extend(l, &levels[k], &top)? {
            Ok(_) => Some(vec![Scalar::zero(); class_len(l, &levels[k])?]),
            Err(c) => Some(c),
        },
        Err(_) => None,
    })
}

fn class_len(l: &Dgla, lv: &Level) -> Result<usize> {
    Ok(l.cohomology_degree(1)?.dim_h() * lv.problem.ext.ideal_dim())
}

/// Solves the linearized condition that the class at level `k` vanishes
/// over `base + span(shifts)`, refining a few times; returns the solution
/// followed by its moves along the solution space.
fn lookahead(
    l: &Dgla,
    levels: &[Level],
    i: usize,
    k: usize,
    base: &TensorElement,
    shifts: &[TensorElement],
) -> Result<Vec<TensorElement>> {
    let dirs: Vec<&TensorElement> = shifts.iter().skip(1).step_by(4).collect();
    if dirs.is_empty() {
        return Ok(Vec::new());
    }
    let mut cand = base.clone();
    let mut free = Vec::new();
    for _ in 0..4 {
        let Some(o0) = class_at(l, levels, i, k, &cand)? else {
            break;
        };
        if o0.iter().all(Zero::is_zero) {
            break;
        }
        let mut cols = Vec::new();
        for z in &dirs {
            let Some(o) = class_at(l, levels, i, k, &cand.add(z))? else {
                return Ok(vec![cand]);
            };
            cols.push(vector::sub(&o, &o0));
        }
        let m = Matrix::from_cols(&cols, o0.len())?;
        let Some(sol) = m.solve_affine(&vector::neg(&o0))? else {
            break;
        };
        cand = combine(&cand, &sol.particular, &dirs);
        free = sol.nullspace.basis().to_vec();
    }
    let mut out = vec![cand.clone()];
    for v in free {
        out.push(combine(&cand, &v, &dirs));
    }
    Ok(out)
}

fn combine(base: &TensorElement, coeffs: &[Scalar], dirs: &[&TensorElement]) -> TensorElement {
    let mut out = base.clone();
    for (c, z) in coeffs.iter().zip(dirs) {
        if !c.is_zero() {
            out = out.add(&z.scale(c));
        }
    }
    out
}

fn shifts(l: &Dgla, p: &LiftingProblem) -> Result<Vec<TensorElement>> {
    let z0 = l
        .diff_block(0)
        .map(Matrix::kernel)
        .unwrap_or_else(|| Subspace::zero(l.dim(0)));
    let mut out = vec![p.over_b.zero(0)];
    for z in z0.basis() {
        for m in p.ext.ideal.basis() {
            let e = p.over_b.pure(0, z, m)?;
            for c in [1, -1, 2, -2] {
                out.push(e.scale(&int(c)));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MorphismVerdict {
    #[serde(rename = "étale")]
    Etale,
    Isomorphism,
    Inconclusive,
}

/// The cohomology hypotheses for `Def_L → Def_N` to be étale or an
/// isomorphism. `None` where a map is not determined by the window.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MorphismReport {
    pub h0_surjective: Option<bool>,
    pub h1_bijective: Option<bool>,
    pub h2_injective: Option<bool>,
    pub ranks: Vec<(i32, usize, usize, usize)>,
    pub verdict: MorphismVerdict,
}

/// `H^i(f)` in representative bases.
pub fn cohomology_map(f: &DglaMorphism, i: i32) -> Result<Matrix> {
    let hs = f.source.cohomology_degree(i)?;
    let ht = f.target.cohomology_degree(i)?;
    let mut m = Matrix::zeros(ht.dim_h(), hs.dim_h());
    for (c, h) in hs.h.basis().iter().enumerate() {
        for (r, x) in ht.class_of(&f.apply(i, h)?)?.into_iter().enumerate() {
            m.set(r, c, x);
        }
    }
    Ok(m)
}

pub fn thm31_report(f: &DglaMorphism) -> Result<MorphismReport> {
    f.check()?;
    let mut ranks = Vec::new();
    let mut map = |i: i32| -> Option<Matrix> {
        let m = cohomology_map(f, i).ok()?;
        ranks.push((i, m.cols(), m.rows(), m.rank()));
        Some(m)
    };
    let h0 = map(0).map(|m| m.rank() == m.rows());
    let h1 = map(1).map(|m| m.rank() == m.rows() && m.rank() == m.cols());
    let h2 = map(2).map(|m| m.rank() == m.cols());
    let etale = h1 == Some(true) && h2 == Some(true);
    let verdict = match (etale, h0) {
        (true, Some(true)) => MorphismVerdict::Isomorphism,
        (true, _) => MorphismVerdict::Etale,
        _ => MorphismVerdict::Inconclusive,
    };
    Ok(MorphismReport {
        h0_surjective: h0,
        h1_bijective: h1,
        h2_injective: h2,
        ranks,
        verdict,
    })
}

/// `(ξ, η) ↦ [ξ, η]` in `H²`, read off the obstruction of `ξx + ηy` over
/// `𝕂[x,y]/(x²,y²) → 𝕂[x,y]/(x²,xy,y²)`.
pub fn bracket_pairing(l: &Dgla, xi: &[Scalar], eta: &[Scalar]) -> Result<Vec<Scalar>> {
    let total = crate::artin::parse_ring("x^2,y^2")?;
    let xy = total
        .labels()
        .iter()
        .position(|s| s == "xy")
        .ok_or_else(|| Error::Internal("missing monomial xy".into()))?;
    let ext = SmallExtension::quotient_by(
        &total,
        &Subspace::span(total.dim_m(), [unit(total.dim_m(), xy)])?,
    )?;
    let p = LiftingProblem::new(l, &ext)?;
    let pos = |name: &str| p.over_a.ring().labels().iter().position(|s| s == name);
    let (ix, iy) = match (pos("x"), pos("y")) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Internal("missing generators".into())),
    };
    let n = p.over_a.ring().dim_m();
    let x = p
        .over_a
        .pure(1, xi, &unit(n, ix))?
        .add(&p.over_a.pure(1, eta, &unit(n, iy))?);
    let class = p.obstruction(&x)?;
    Ok(class.coords.iter().map(|row| row[0].clone()).collect())
}
