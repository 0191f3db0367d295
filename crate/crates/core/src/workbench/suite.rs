use serde::Serialize;
use serde_json::Value;

use crate::artin::{parse_ring, small_extension_tower, tensor_nilpotent};
use crate::dgla::{truncate_positive, validate_dgla, Dgla, DglaMorphism};
use crate::error::{Error, Result};
use crate::gauge::{def_tangent, exp_action, tangent_gauge_image, thm31_report, MorphismVerdict};
use crate::homotopy::{
    gauge_from_homotopy, homotopy_from_gauge, tangent_difference_image, PathSpace,
};
use crate::kuranishi::{HodgeSplit, Kuranishi};
use crate::linalg::Scalar;
use crate::mc::{
    mc_check, primary_obstruction, sample_element, LiftingProblem, McSampler, TensorDgla,
};
use crate::rng::Lcg;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Value {
        let failed = self.failures().count();
        serde_json::json!({ "total": self.checks.len(), "failed": failed, "checks": self.checks })
    }
}

type Check = fn(&Dgla, &mut Lcg, usize) -> Result<String>;

const CHECKS: &[(&str, Check)] = &[
    ("axioms-tensor", axioms_tensor),
    ("hodge", hodge),
    ("tangent", tangent),
    ("gauge-stability", gauge_stability),
    ("obstruction", obstruction),
    ("primary-obstruction", primary),
    ("kuranishi", kuranishi),
    ("homotopy", homotopy),
    ("morphisms", morphisms),
];

/// Runs every check on every target; targets run concurrently and the
/// results are sorted by check name.
pub fn run_suite(targets: &[(String, Dgla)], seed: u64, samples: usize) -> SuiteReport {
    let mut checks: Vec<CheckResult> = std::thread::scope(|scope| {
        let handles: Vec<_> = targets
            .iter()
            .map(|(name, l)| scope.spawn(move || run_target(name, l, seed, samples)))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().unwrap_or_else(|_| vec![panicked()]))
            .collect()
    });
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    SuiteReport { checks }
}

fn panicked() -> CheckResult {
    CheckResult {
        name: "suite".into(),
        passed: false,
        detail: "a check panicked".into(),
    }
}

fn run_target(name: &str, l: &Dgla, seed: u64, samples: usize) -> Vec<CheckResult> {
    let rep = validate_dgla(l);
    let mut out = vec![CheckResult {
        name: format!("{name}/validate"),
        passed: rep.passed(),
        detail: match rep.violations.first() {
            None => format!("{} tuples", rep.checked),
            Some(v) => format!(
                "{} violation(s), first {}({}); remaining checks skipped",
                rep.violations.len(),
                v.identity,
                v.tuple.join(", ")
            ),
        },
    }];
    if !rep.passed() {
        return out;
    }
    for (i, (check, f)) in CHECKS.iter().enumerate() {
        let mut rng = Lcg::new(seed.wrapping_mul(1000).wrapping_add(i as u64));
        let (passed, detail) = match f(l, &mut rng, samples) {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        out.push(CheckResult {
            name: format!("{name}/{check}"),
            passed,
            detail,
        });
    }
    out
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}

fn axioms_tensor(l: &Dgla, _: &mut Lcg, _: usize) -> Result<String> {
    let mut n = 0;
    for r in ["eps", "t^3", "x^2,xy,y^2"] {
        let rep = validate_dgla(&tensor_nilpotent(l, &parse_ring(r)?)?);
        if let Some(v) = rep.violations.first() {
            return Err(fail(format!(
                "over {r}: {}({})",
                v.identity,
                v.tuple.join(", ")
            )));
        }
        n += rep.checked;
    }
    Ok(format!("{n} tuples"))
}

fn hodge(l: &Dgla, _: &mut Lcg, _: usize) -> Result<String> {
    let ids = HodgeSplit::new(l)?.identities()?;
    match ids.iter().find(|(_, ok)| !ok) {
        Some((i, _)) => Err(fail(format!("identities fail in degree {i}"))),
        None => Ok(format!("{} degrees", ids.len())),
    }
}

fn tangent(l: &Dgla, _: &mut Lcg, _: usize) -> Result<String> {
    let c1 = l.cohomology_degree(1)?;
    let h1 = def_tangent(l)?;
    if Some(h1.dim_h()) != l.h_dim(1)? || !h1.z.same_as(&c1.z) {
        return Err(fail("tangent of Def is not H¹"));
    }
    if !tangent_gauge_image(l)?.same_as(&c1.b) {
        return Err(fail("gauge directions differ from B¹"));
    }
    if !tangent_difference_image(l, 2)?.same_as(&c1.b) {
        return Err(fail("endpoint differences of tangent paths differ from B¹"));
    }
    Ok(format!("dim Z¹ = {}, dim H¹ = {}", c1.z.dim(), h1.dim_h()))
}

fn gauge_stability(l: &Dgla, rng: &mut Lcg, n: usize) -> Result<String> {
    let mut count = 0;
    for r in ["eps", "t^3"] {
        let t = TensorDgla::new(l, &parse_ring(r)?)?;
        let mc = McSampler::new(l, t.ring())?;
        for _ in 0..n {
            let x = mc.sample(rng)?;
            let a = sample_element(&t, 0, rng);
            if !mc_check(&t, &exp_action(&t, &a, &x)?)? {
                return Err(fail(format!("e^a * x leaves MC over {r}")));
            }
            count += 1;
        }
    }
    Ok(format!("{count} pairs"))
}

fn obstruction(l: &Dgla, rng: &mut Lcg, n: usize) -> Result<String> {
    let (mut zero, mut nonzero) = (0, 0);
    for r in ["t^3", "x^2,xy,y^2"] {
        for e in small_extension_tower(&parse_ring(r)?)? {
            let p = LiftingProblem::new(l, &e)?;
            let mc = McSampler::new(l, &e.quotient)?;
            for _ in 0..n {
                let x = mc.sample(rng)?;
                let o = p.obstruction(&x)?;
                if o.is_zero() != p.brute_force_lift(&x)?.is_some() {
                    return Err(fail(format!("class and brute force disagree over {r}")));
                }
                if o.is_zero() {
                    zero += 1;
                } else {
                    nonzero += 1;
                }
            }
        }
    }
    Ok(format!("{zero} unobstructed, {nonzero} obstructed"))
}

fn primary(l: &Dgla, _: &mut Lcg, _: usize) -> Result<String> {
    let e = small_extension_tower(&parse_ring("t^3")?)?.remove(0);
    let p = LiftingProblem::new(l, &e)?;
    let one = [crate::linalg::scalar::one()];
    let z1 = l.cohomology_degree(1)?.z;
    for xi in z1.basis() {
        let want = primary_obstruction(l, xi)?;
        let o = p.obstruction(&p.over_a.pure(1, xi, &one)?)?;
        let got: Vec<Scalar> = o.coords.iter().map(|r| r[0].clone()).collect();
        if got != want {
            return Err(fail("obstruction differs from the class of ½[ξ,ξ]"));
        }
    }
    Ok(format!("{} cocycles", z1.dim()))
}

fn kuranishi(l: &Dgla, rng: &mut Lcg, n: usize) -> Result<String> {
    let mut count = 0;
    for r in ["eps", "t^3"] {
        let k = Kuranishi::new(l, &parse_ring(r)?)?;
        let mc = McSampler::new(l, k.t.ring())?;
        for _ in 0..n {
            let x = sample_element(&k.t, 1, rng);
            if k.f_inverse(&k.f(&x)?)? != x || k.f(&k.f_inverse(&x)?)? != x {
                return Err(fail(format!("F and F⁻¹ are not inverse over {r}")));
            }
            let m = mc.sample(rng)?;
            let (_, nf) = k.gauge_normalize(&m)?;
            let y = k.mc_to_kur(&nf)?;
            if k.kur_to_mc(&y)? != nf {
                return Err(fail(format!("Kuranishi round trip fails over {r}")));
            }
            count += 1;
        }
    }
    Ok(format!("{count} samples"))
}

fn homotopy(l: &Dgla, rng: &mut Lcg, n: usize) -> Result<String> {
    let t = TensorDgla::new(l, &parse_ring("t^3")?)?;
    let s = PathSpace::new(&t, PathSpace::default_cap(&t, 1));
    let mc = McSampler::new(l, t.ring())?;
    for _ in 0..n {
        let x = mc.sample(rng)?;
        let g = sample_element(&t, 0, rng);
        let y = exp_action(&t, &g, &x)?;
        let w = homotopy_from_gauge(&s, &g, &x, &y)?;
        let g2 = gauge_from_homotopy(&s, &w)?;
        if exp_action(&t, &g2, &x)? != y {
            return Err(fail("recovered gauge does not join the endpoints"));
        }
    }
    Ok(format!("{n} witnesses"))
}

fn morphisms(l: &Dgla, _: &mut Lcg, _: usize) -> Result<String> {
    if thm31_report(&DglaMorphism::identity(l))?.verdict != MorphismVerdict::Isomorphism {
        return Err(fail("identity is not reported as an isomorphism"));
    }
    let c = l.cohomology_degree(1)?;
    let r = thm31_report(&truncate_positive(l, &c.h.sum(&c.c)?)?)?;
    let h0 = l.h_dim(0)? == Some(0);
    let want = if h0 {
        MorphismVerdict::Isomorphism
    } else {
        MorphismVerdict::Etale
    };
    if r.verdict != want {
        return Err(fail(format!("truncation reported {:?}", r.verdict)));
    }
    Ok(format!("truncation {:?}", r.verdict))
}
