use clap::{Args, Parser, Subcommand};

use super::config::{DglaSource, OutputFormat};

#[derive(Parser, Debug, Clone)]
#[command(
    name = "dgla",
    version,
    about = "Exact workbench for DGLAs, Maurer-Cartan elements and deformation functors"
)]
pub struct Cli {
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: OutputFormat,
    /// Add wall-clock timing to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Exhaustive check of the DGLA axioms.
    Validate(DglaArg),
    /// Cohomology dimensions and representatives per degree.
    Cohomology(DglaArg),
    /// Maurer-Cartan elements over an Artin ring.
    Mc {
        #[command(subcommand)]
        op: McOp,
    },
    /// Gauge action, equivalence and morphism reports.
    Gauge {
        #[command(subcommand)]
        op: GaugeOp,
    },
    /// Hodge splitting and the Kuranishi functor.
    Kuranishi {
        #[command(subcommand)]
        op: KuranishiOp,
    },
    /// Maurer-Cartan paths `a(t) + b(t)dt`.
    Homotopy {
        #[command(subcommand)]
        op: HomotopyOp,
    },
    /// Every property check on a set of fixtures.
    Suite(SuiteArgs),
}

#[derive(Args, Debug, Clone)]
pub struct DglaArg {
    /// `builtin:NAME` or a DGLA JSON file.
    #[arg(long)]
    pub dgla: DglaSource,
}

#[derive(Args, Debug, Clone)]
pub struct RingArgs {
    #[command(flatten)]
    pub dgla: DglaArg,
    /// Shorthand (`eps`, `t^3`, `x^2,xy,y^2`), inline JSON or `@file`.
    #[arg(long, default_value = "eps")]
    pub ring: String,
}

#[derive(Args, Debug, Clone)]
pub struct ElementArgs {
    #[command(flatten)]
    pub inputs: RingArgs,
    /// Element of `L^1 ⊗ m`: inline JSON, `@file`, or `0`.
    #[arg(long, default_value = "0")]
    pub x: String,
}

#[derive(Subcommand, Debug, Clone)]
pub enum McOp {
    /// Whether `x` is Maurer-Cartan.
    Check(ElementArgs),
    /// `dx + ½[x,x]`.
    Residual(ElementArgs),
    /// Obstruction to lifting `x` through the top step of the ring's tower.
    Obstruct(ElementArgs),
    /// Lift of `x` through the top step, if one exists.
    Lift(ElementArgs),
    /// Seeded Maurer-Cartan elements.
    Sample {
        #[command(flatten)]
        inputs: RingArgs,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// First-order deformations `Z^1` and `H^1`.
    Tangent(DglaArg),
    /// Sufficient conditions for smoothness: `H^2 = 0`, `[Z^1,Z^1] ⊆ B^2`.
    Smoothness(DglaArg),
}

#[derive(Subcommand, Debug, Clone)]
pub enum GaugeOp {
    /// `e^a * x`.
    Act {
        #[command(flatten)]
        inputs: ElementArgs,
        #[arg(long, default_value = "0")]
        a: String,
    },
    /// `a • b` with `e^{a•b} = e^a e^b`.
    Bch {
        #[command(flatten)]
        inputs: RingArgs,
        #[arg(long, default_value = "0")]
        a: String,
        #[arg(long, default_value = "0")]
        b: String,
    },
    /// Decides whether `x` and `y` are gauge equivalent.
    Equiv {
        #[command(flatten)]
        inputs: ElementArgs,
        #[arg(long, default_value = "0")]
        y: String,
    },
    /// Cohomology criteria for a morphism to induce an étale map or an isomorphism.
    Report {
        #[command(flatten)]
        dgla: DglaArg,
        /// `identity`, `zero`, `truncation` or `@file`.
        #[arg(long, default_value = "identity")]
        morphism: String,
    },
    /// Image of the infinitesimal gauge action.
    Tangent(DglaArg),
}

#[derive(Subcommand, Debug, Clone)]
pub enum KuranishiOp {
    /// Homotopy `δ` and harmonic projector `H` per degree.
    Split(DglaArg),
    /// `F(x) = x + δ(½[x,x])`.
    Map(ElementArgs),
    /// `F^{-1}` by fixed-point iteration.
    Inverse(ElementArgs),
    /// Whether `x` lies in the Kuranishi functor.
    Member(ElementArgs),
    /// Kuranishi representative of a Maurer-Cartan element.
    Normalize(ElementArgs),
    /// Truncated obstruction polynomials `q`.
    Poly {
        #[command(flatten)]
        dgla: DglaArg,
        #[arg(long)]
        order: Option<usize>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct PathArgs {
    #[command(flatten)]
    pub inputs: RingArgs,
    /// `{"a": path, "b": path}`, inline or `@file`.
    #[arg(long)]
    pub path: String,
}

#[derive(Subcommand, Debug, Clone)]
pub enum HomotopyOp {
    /// Whether the path is Maurer-Cartan in `Ω`.
    Check(PathArgs),
    /// Evaluation at `t = at`.
    Eval {
        #[command(flatten)]
        path: PathArgs,
        #[arg(long, default_value = "1")]
        at: String,
    },
    /// Path from `x` to `e^g * x`.
    FromGauge {
        #[command(flatten)]
        inputs: ElementArgs,
        #[arg(long, default_value = "0")]
        g: String,
    },
    /// Gauge element joining the endpoints.
    ToGauge(PathArgs),
    /// Lifts a path over the quotient of the top step of `--ring`.
    Lift {
        #[command(flatten)]
        path: PathArgs,
        /// Maurer-Cartan element over the ring; defaults to a lift of the path at `--at`.
        #[arg(long)]
        anchor: Option<String>,
        #[arg(long, default_value = "0")]
        at: String,
    },
    /// Endpoint differences of first-order paths.
    Tangent {
        #[command(flatten)]
        dgla: DglaArg,
        #[arg(long, default_value_t = 2)]
        max_t: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SuiteArgs {
    /// Builtin names, comma separated; all builtins when empty.
    #[arg(long, value_delimiter = ',')]
    pub fixtures: Vec<String>,
    /// Extra DGLAs to check.
    #[arg(long)]
    pub dgla: Vec<DglaSource>,
    /// Seeded samples per check.
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
}
