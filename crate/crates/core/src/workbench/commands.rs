use std::time::Instant;

use serde_json::{json, Value};

use super::cli::{
    Cli, Command, DglaArg, ElementArgs, GaugeOp, HomotopyOp, KuranishiOp, McOp, RingArgs,
};
use super::config::{load_payload, load_ring, WorkbenchConfig};
use super::json::{morphism_from_json, subspace_json, vector_json, vectors_json};
use super::report::{InputDigest, Outcome, RunReport};
use super::suite::run_suite;
use crate::artin::{ring_to_json, small_extension_tower, ArtinAlgebra};
use crate::dgla::json::dgla_to_json;
use crate::dgla::{truncate_positive, validate_dgla, Dgla, DglaMorphism};
use crate::error::{Error, Result};
use crate::gauge::{
    def_tangent, exp_action, gauge_bch, gauge_equivalent, tangent_gauge_image, thm31_report,
    Verdict,
};
use crate::homotopy::{
    gauge_from_homotopy, homotopy_from_gauge, omega_from_json, omega_to_json,
    tangent_difference_image, PathSpace,
};
use crate::kuranishi::{kuranishi_polynomials, HodgeSplit, Kuranishi};
use crate::linalg::scalar::{parse_scalar, scalar_to_json};
use crate::mc::{
    element_from_json, element_to_json, mc_check, mc_residual, mc_tangent, smoothness_diagnostics,
    LiftingProblem, McSampler, TensorDgla, TensorElement,
};
use crate::rng::Lcg;

/// What a command found, before it is wrapped into a report.
pub struct Finding {
    pub outcome: Outcome,
    pub verdict: Option<String>,
    pub payload: Value,
}

impl Finding {
    fn pass(payload: Value) -> Self {
        Finding {
            outcome: Outcome::Pass,
            verdict: None,
            payload,
        }
    }

    fn checked(ok: bool, payload: Value) -> Self {
        Finding {
            outcome: Outcome::from_pass(ok),
            verdict: None,
            payload,
        }
    }

    fn decided(verdict: &str, payload: Value) -> Self {
        Finding {
            outcome: Outcome::Decided,
            verdict: Some(verdict.into()),
            payload,
        }
    }
}

/// Accumulates the digest while inputs are loaded.
struct Session {
    digest: InputDigest,
}

impl Session {
    fn note(&mut self, key: &str, value: &str) {
        let d = std::mem::take(&mut self.digest);
        self.digest = d.part(key, value);
    }

    fn dgla(&mut self, a: &DglaArg) -> Result<Dgla> {
        let l = a.dgla.load()?;
        self.note("dgla", &dgla_to_json(&l).to_string());
        Ok(l)
    }

    fn ring(&mut self, spec: &str) -> Result<ArtinAlgebra> {
        let a = load_ring(spec)?;
        self.note("ring", &ring_to_json(&a).to_string());
        Ok(a)
    }

    fn tensor(&mut self, r: &RingArgs) -> Result<TensorDgla> {
        let l = self.dgla(&r.dgla)?;
        let a = self.ring(&r.ring)?;
        TensorDgla::new(&l, &a)
    }

    fn payload(&mut self, key: &str, spec: &str) -> Result<Option<String>> {
        let text = load_payload(spec)?;
        let canon = match &text {
            None => "0".to_string(),
            Some(t) => serde_json::from_str::<Value>(t)
                .map_err(|e| Error::from(e).context(format!("--{key}")))?
                .to_string(),
        };
        self.note(key, &canon);
        Ok(text)
    }

    fn element(
        &mut self,
        t: &TensorDgla,
        key: &str,
        spec: &str,
        degree: i32,
    ) -> Result<TensorElement> {
        let x = match self.payload(key, spec)? {
            None => t.zero(degree),
            Some(text) => element_from_json(t, &text).map_err(|e| e.context(format!("--{key}")))?,
        };
        if x.degree != degree {
            return Err(Error::Degree {
                expected: degree,
                found: x.degree,
            });
        }
        Ok(x)
    }

    fn path_space(&mut self, t: &TensorDgla, text: &str) -> Result<PathSpace> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::from(e).context("--path"))?;
        let mut top = 0;
        for part in ["a", "b"] {
            if let Some(Value::Object(m)) = v.get(part).and_then(|p| p.get("coeff_by_t_power")) {
                for k in m.keys() {
                    top = top.max(k.parse::<usize>().unwrap_or(0));
                }
            }
        }
        Ok(PathSpace::new(t, PathSpace::default_cap(t, top)))
    }

    fn path(
        &mut self,
        t: &TensorDgla,
        spec: &str,
    ) -> Result<(PathSpace, crate::homotopy::OmegaElement)> {
        let text = self
            .payload("path", spec)?
            .ok_or_else(|| Error::Parse("--path: a path is required".into()))?;
        let s = self.path_space(t, &text)?;
        let w = omega_from_json(&s, &text).map_err(|e| e.context("--path"))?;
        Ok((s, w))
    }
}

pub fn run(cli: &Cli) -> Result<RunReport> {
    let mut cfg = WorkbenchConfig {
        seed: cli.seed,
        format: cli.format,
        timing: cli.timing,
        ..WorkbenchConfig::default()
    };
    cfg.budgets = super::config::Budgets::from_env()?;
    execute(&cli.command, &cfg)
}

pub fn execute(command: &Command, cfg: &WorkbenchConfig) -> Result<RunReport> {
    cfg.budgets.check()?;
    let start = Instant::now();
    let name = command_name(command);
    let mut s = Session {
        digest: InputDigest::new()
            .part("command", &name)
            .part("seed", &cfg.seed.to_string())
            .part("poly_order", &cfg.budgets.poly_order.to_string())
            .part("search_budget", &cfg.budgets.search_budget.to_string()),
    };
    let f = dispatch(command, cfg, &mut s)?;
    Ok(RunReport {
        command: name,
        inputs_digest: s.digest.finish(),
        outcome: f.outcome,
        verdict: f.verdict,
        payload: f.payload,
        timing_ms: cfg.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

fn command_name(c: &Command) -> String {
    let sub = |op: &dyn std::fmt::Debug| {
        let d = format!("{op:?}");
        let head: String = d.chars().take_while(|c| c.is_alphanumeric()).collect();
        kebab(&head)
    };
    match c {
        Command::Validate(_) => "validate".into(),
        Command::Cohomology(_) => "cohomology".into(),
        Command::Mc { op } => format!("mc {}", sub(op)),
        Command::Gauge { op } => format!("gauge {}", sub(op)),
        Command::Kuranishi { op } => format!("kuranishi {}", sub(op)),
        Command::Homotopy { op } => format!("homotopy {}", sub(op)),
        Command::Suite(_) => "suite".into(),
    }
}

fn kebab(s: &str) -> String {
    let mut out = String::new();
    for (i, c) in s.chars().enumerate() {
        if c.is_uppercase() {
            if i > 0 {
                out.push('-');
            }
            out.extend(c.to_lowercase());
        } else {
            out.push(c);
        }
    }
    out
}

fn dispatch(c: &Command, cfg: &WorkbenchConfig, s: &mut Session) -> Result<Finding> {
    match c {
        Command::Validate(a) => validate(&s.dgla(a)?),
        Command::Cohomology(a) => cohomology(&s.dgla(a)?),
        Command::Mc { op } => mc(op, cfg, s),
        Command::Gauge { op } => gauge(op, cfg, s),
        Command::Kuranishi { op } => kuranishi(op, cfg, s),
        Command::Homotopy { op } => homotopy(op, s),
        Command::Suite(args) => {
            let mut targets = Vec::new();
            let names = if args.fixtures.is_empty() && args.dgla.is_empty() {
                crate::dgla::fixtures::all_fixture_names()
            } else {
                args.fixtures.clone()
            };
            for n in &names {
                let src: super::config::DglaSource = format!("builtin:{n}").parse()?;
                targets.push((n.clone(), src.load()?));
            }
            for src in &args.dgla {
                targets.push((src.to_string(), src.load()?));
            }
            for (n, l) in &targets {
                s.note(n, &dgla_to_json(l).to_string());
            }
            s.note("samples", &args.samples.to_string());
            let rep = run_suite(&targets, cfg.seed, args.samples);
            Ok(Finding::checked(rep.passed(), rep.to_json()))
        }
    }
}

pub fn validate(l: &Dgla) -> Result<Finding> {
    let rep = validate_dgla(l);
    let violations: Vec<Value> = rep
        .violations
        .iter()
        .map(|v| json!({ "identity": v.identity.to_string(), "tuple": v.tuple }))
        .collect();
    Ok(Finding::checked(
        rep.passed(),
        json!({ "dgla": l.name(), "checked": rep.checked, "violations": violations }),
    ))
}

fn cohomology(l: &Dgla) -> Result<Finding> {
    let mut degrees = Vec::new();
    for i in l.space().degrees() {
        match l.cohomology_degree(i) {
            Ok(c) => degrees.push(json!({
                "degree": i,
                "dim": l.dim(i),
                "z": c.z.dim(),
                "b": c.b.dim(),
                "h": c.dim_h(),
                "representatives": vectors_json(c.h.basis()),
            })),
            Err(Error::Window(_)) => {
                degrees.push(json!({ "degree": i, "dim": l.dim(i), "h": null }))
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Finding::pass(
        json!({ "dgla": l.name(), "degrees": degrees }),
    ))
}

fn el(t: &TensorDgla, x: &TensorElement) -> Value {
    element_to_json(t, x)
}

fn mc(op: &McOp, cfg: &WorkbenchConfig, s: &mut Session) -> Result<Finding> {
    match op {
        McOp::Check(e) | McOp::Residual(e) => {
            let t = s.tensor(&e.inputs)?;
            let x = s.element(&t, "x", &e.x, 1)?;
            let r = mc_residual(&t, &x)?;
            let ok = r.is_zero();
            let payload = json!({ "mc": ok, "residual": el(&t, &r) });
            Ok(Finding::decided(if ok { "mc" } else { "not-mc" }, payload))
        }
        McOp::Obstruct(e) | McOp::Lift(e) => {
            let l = s.dgla(&e.inputs.dgla)?;
            let b = s.ring(&e.inputs.ring)?;
            let step = top_step(&b)?;
            let p = LiftingProblem::new(&l, &step)?;
            let x = s.element(&p.over_a, "x", &e.x, 1)?;
            let o = p.obstruction(&x)?;
            let coords: Vec<Value> = o.coords.iter().map(|r| vector_json(r)).collect();
            let mut payload = json!({
                "quotient": p.over_a.ring().name(),
                "class": coords,
                "cocycle": el(&p.over_b, &o.cocycle),
            });
            if matches!(op, McOp::Lift(_)) {
                if let Some(y) = p.lift(&x)? {
                    if !mc_check(&p.over_b, &y)? || p.project(&y)? != x {
                        return Err(Error::Internal("lift does not verify".into()));
                    }
                    payload["lift"] = el(&p.over_b, &y);
                }
            }
            Ok(Finding::decided(
                if o.is_zero() {
                    "unobstructed"
                } else {
                    "obstructed"
                },
                payload,
            ))
        }
        McOp::Sample { inputs, count } => {
            let t = s.tensor(inputs)?;
            let mut rng = Lcg::new(cfg.seed);
            let mut out = Vec::new();
            let mc = McSampler::new(t.base(), t.ring())?;
            for _ in 0..*count {
                let x = mc.sample(&mut rng)?;
                if !mc_check(&t, &x)? {
                    return Err(Error::Internal(
                        "sampled element is not Maurer-Cartan".into(),
                    ));
                }
                out.push(el(&t, &x));
            }
            Ok(Finding::pass(json!({ "samples": out })))
        }
        McOp::Tangent(a) => {
            let l = s.dgla(a)?;
            let z1 = mc_tangent(&l)?;
            let h1 = def_tangent(&l)?;
            Ok(Finding::pass(json!({
                "mc_tangent": subspace_json(&z1),
                "def_tangent": { "dim": h1.dim_h(), "representatives": vectors_json(h1.h.basis()) },
            })))
        }
        McOp::Smoothness(a) => {
            let l = s.dgla(a)?;
            let r = smoothness_diagnostics(&l)?;
            Ok(Finding::pass(serde_json::to_value(r)?))
        }
    }
}

fn top_step(b: &ArtinAlgebra) -> Result<crate::artin::SmallExtension> {
    small_extension_tower(b)?.into_iter().next().ok_or_else(|| {
        Error::Precondition("the ring has no small extension to lift through".into())
    })
}

fn gauge(op: &GaugeOp, cfg: &WorkbenchConfig, s: &mut Session) -> Result<Finding> {
    match op {
        GaugeOp::Act { inputs, a } => {
            let t = s.tensor(&inputs.inputs)?;
            let x = s.element(&t, "x", &inputs.x, 1)?;
            let a = s.element(&t, "a", a, 0)?;
            let y = exp_action(&t, &a, &x)?;
            let (xm, ym) = (mc_check(&t, &x)?, mc_check(&t, &y)?);
            Ok(Finding::checked(
                xm == ym,
                json!({ "y": el(&t, &y), "x_mc": xm, "y_mc": ym }),
            ))
        }
        GaugeOp::Bch { inputs, a, b } => {
            let t = s.tensor(inputs)?;
            let a = s.element(&t, "a", a, 0)?;
            let b = s.element(&t, "b", b, 0)?;
            Ok(Finding::pass(
                json!({ "product": el(&t, &gauge_bch(&t, &a, &b)?) }),
            ))
        }
        GaugeOp::Equiv { inputs, y } => {
            let t = s.tensor(&inputs.inputs)?;
            let x = s.element(&t, "x", &inputs.x, 1)?;
            let y = s.element(&t, "y", y, 1)?;
            let d = gauge_equivalent(t.base(), t.ring(), &x, &y, cfg.budgets.search_budget)?;
            Ok(match d.verdict {
                Verdict::Equivalent { witness } => {
                    if exp_action(&t, &witness, &x)? != y {
                        return Err(Error::Internal("witness does not verify".into()));
                    }
                    Finding::decided(
                        "Equivalent",
                        json!({ "complete": d.complete, "witness": el(&t, &witness) }),
                    )
                }
                Verdict::NotEquivalent { certificate } => Finding::decided(
                    "NotEquivalent",
                    json!({
                        "complete": d.complete,
                        "certificate": {
                            "step": certificate.step,
                            "ring": certificate.ring,
                            "class": certificate.coords.iter().map(|r| vector_json(r)).collect::<Vec<_>>(),
                        },
                    }),
                ),
                Verdict::Unknown { diagnostic } => Finding {
                    outcome: Outcome::Unknown,
                    verdict: Some("Unknown".into()),
                    payload: json!({ "complete": d.complete, "diagnostic": diagnostic }),
                },
            })
        }
        GaugeOp::Report { dgla, morphism } => {
            let l = s.dgla(dgla)?;
            let f = match morphism.as_str() {
                "identity" => DglaMorphism::identity(&l),
                "zero" => DglaMorphism::zero(&l, &l),
                "truncation" => {
                    let c = l.cohomology_degree(1)?;
                    truncate_positive(&l, &c.h.sum(&c.c)?)?
                }
                other => {
                    let text = s
                        .payload("morphism", other)?
                        .ok_or_else(|| Error::Parse("--morphism: expected a morphism".into()))?;
                    morphism_from_json(&l, &text).map_err(|e| e.context("--morphism"))?
                }
            };
            s.note("morphism", morphism);
            let r = thm31_report(&f)?;
            let v = serde_json::to_value(r.verdict)?;
            let verdict = v.as_str().unwrap_or_default().to_string();
            Ok(Finding::decided(&verdict, serde_json::to_value(&r)?))
        }
        GaugeOp::Tangent(a) => {
            let l = s.dgla(a)?;
            let h1 = def_tangent(&l)?;
            let img = tangent_gauge_image(&l)?;
            let ok = img.same_as(&h1.b);
            Ok(Finding::checked(
                ok,
                json!({
                    "def_tangent": h1.dim_h(),
                    "gauge_image": subspace_json(&img),
                    "b1": subspace_json(&h1.b),
                }),
            ))
        }
    }
}

fn kuranishi(op: &KuranishiOp, cfg: &WorkbenchConfig, s: &mut Session) -> Result<Finding> {
    let setup = |s: &mut Session, e: &ElementArgs| -> Result<(Kuranishi, TensorElement)> {
        let l = s.dgla(&e.inputs.dgla)?;
        let a = s.ring(&e.inputs.ring)?;
        let k = Kuranishi::new(&l, &a)?;
        let x = s.element(&k.t, "x", &e.x, 1)?;
        Ok((k, x))
    };
    match op {
        KuranishiOp::Split(a) => {
            let l = s.dgla(a)?;
            let split = HodgeSplit::new(&l)?;
            let ids = split.identities()?;
            let ok = ids.iter().all(|(_, b)| *b);
            let degrees: Vec<Value> = ids
                .iter()
                .map(|(i, b)| {
                    let c = split.degree(*i).ok();
                    json!({
                        "degree": i,
                        "b": c.map(|c| c.b.dim()),
                        "h": c.map(|c| c.dim_h()),
                        "c": c.map(|c| c.c.dim()),
                        "identities": b,
                    })
                })
                .collect();
            Ok(Finding::checked(ok, json!({ "degrees": degrees })))
        }
        KuranishiOp::Map(e) => {
            let (k, x) = setup(s, e)?;
            Ok(Finding::pass(json!({ "image": el(&k.t, &k.f(&x)?) })))
        }
        KuranishiOp::Inverse(e) => {
            let (k, y) = setup(s, e)?;
            let x = k.f_inverse(&y)?;
            if k.f(&x)? != y {
                return Err(Error::Internal("F(F⁻¹(y)) ≠ y".into()));
            }
            Ok(Finding::pass(json!({ "preimage": el(&k.t, &x) })))
        }
        KuranishiOp::Member(e) => {
            let (k, x) = setup(s, e)?;
            let member = k.kur_membership(&x)?;
            let mut payload = json!({ "member": member });
            if member {
                payload["mc"] = el(&k.t, &k.kur_to_mc(&x)?);
            }
            Ok(Finding::decided(
                if member { "member" } else { "not-member" },
                payload,
            ))
        }
        KuranishiOp::Normalize(e) => {
            let (k, x) = setup(s, e)?;
            let (g, n) = k.gauge_normalize(&x)?;
            Ok(Finding::pass(json!({
                "gauge": el(&k.t, &g),
                "normal_form": el(&k.t, &n),
                "kuranishi": el(&k.t, &k.mc_to_kur(&n)?),
            })))
        }
        KuranishiOp::Poly { dgla, order } => {
            let l = s.dgla(dgla)?;
            let order = order.unwrap_or(cfg.budgets.poly_order);
            if order == 0 {
                return Err(Error::Precondition("--order must be positive".into()));
            }
            s.note("order", &order.to_string());
            let q = kuranishi_polynomials(&l, order)?;
            Ok(Finding::pass(q.to_json()))
        }
    }
}

fn homotopy(op: &HomotopyOp, s: &mut Session) -> Result<Finding> {
    let one = crate::linalg::scalar::one();
    let zero = crate::linalg::scalar::zero();
    match op {
        HomotopyOp::Check(p) => {
            let t = s.tensor(&p.inputs)?;
            let (ps, w) = s.path(&t, &p.path)?;
            let r = ps.mc_omega_check(&w)?;
            let mut payload = serde_json::to_value(r)?;
            if r.ok() {
                payload["start"] = el(&t, &ps.evaluate_omega(&w, &zero));
                payload["end"] = el(&t, &ps.evaluate_omega(&w, &one));
            }
            Ok(Finding::decided(
                if r.ok() { "mc" } else { "not-mc" },
                payload,
            ))
        }
        HomotopyOp::Eval { path, at } => {
            let t = s.tensor(&path.inputs)?;
            let (ps, w) = s.path(&t, &path.path)?;
            let at = parse_scalar(at)?;
            s.note("at", &at.to_string());
            Ok(Finding::pass(
                json!({ "at": scalar_to_json(&at), "value": el(&t, &ps.evaluate_omega(&w, &at)) }),
            ))
        }
        HomotopyOp::FromGauge { inputs, g } => {
            let t = s.tensor(&inputs.inputs)?;
            let x = s.element(&t, "x", &inputs.x, 1)?;
            let g = s.element(&t, "g", g, 0)?;
            if !mc_check(&t, &x)? {
                return Err(Error::NotMaurerCartan(t.describe(&x)));
            }
            let y = exp_action(&t, &g, &x)?;
            let ps = PathSpace::new(&t, PathSpace::default_cap(&t, 1));
            let w = homotopy_from_gauge(&ps, &g, &x, &y)?;
            Ok(Finding::pass(
                json!({ "y": el(&t, &y), "path": omega_to_json(&ps, &w) }),
            ))
        }
        HomotopyOp::ToGauge(p) => {
            let t = s.tensor(&p.inputs)?;
            let (ps, w) = s.path(&t, &p.path)?;
            let g = gauge_from_homotopy(&ps, &w)?;
            let x = ps.evaluate_omega(&w, &zero);
            let y = ps.evaluate_omega(&w, &one);
            Ok(Finding::pass(
                json!({ "x": el(&t, &x), "y": el(&t, &y), "witness": el(&t, &g) }),
            ))
        }
        HomotopyOp::Lift { path, anchor, at } => {
            let l = s.dgla(&path.inputs.dgla)?;
            let b = s.ring(&path.inputs.ring)?;
            let step = top_step(&b)?;
            let p = LiftingProblem::new(&l, &step)?;
            let (qs, w) = s.path(&p.over_a, &path.path)?;
            let at = parse_scalar(at)?;
            s.note("at", &at.to_string());
            let anchor = match anchor {
                Some(spec) => s.element(&p.over_b, "anchor", spec, 1)?,
                None => match p.lift(&qs.evaluate_omega(&w, &at))? {
                    Some(y) => y,
                    None => {
                        let o = p.obstruction(&qs.evaluate_omega(&w, &at))?;
                        let coords: Vec<Value> = o.coords.iter().map(|r| vector_json(r)).collect();
                        return Ok(Finding::decided("obstructed", json!({ "class": coords })));
                    }
                },
            };
            let ts = PathSpace::new(&p.over_b, qs.cap.max(PathSpace::default_cap(&p.over_b, 1)));
            let lifted = ts.lift_omega(&qs, &step, &w, &anchor, &at)?;
            Ok(Finding::decided(
                "lifted",
                json!({ "lift": omega_to_json(&ts, &lifted) }),
            ))
        }
        HomotopyOp::Tangent { dgla, max_t } => {
            let l = s.dgla(dgla)?;
            s.note("max_t", &max_t.to_string());
            let img = tangent_difference_image(&l, *max_t)?;
            let b1 = l.cohomology_degree(1)?.b;
            Ok(Finding::checked(
                img.same_as(&b1),
                json!({ "difference_image": subspace_json(&img), "b1": subspace_json(&b1) }),
            ))
        }
    }
}
