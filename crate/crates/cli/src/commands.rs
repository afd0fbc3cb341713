//! Argument parsing and dispatch.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cxpt_core::clifford::{
    borel_pompeiu, cauchy_kernel, dirac_apply, extended_borel_pompeiu, maxwell_extend, regular_point,
    bivector_example, BpConfig, DiracMode, Domain, MaxwellConfig, Multivector, MultivectorField, Side,
};
use cxpt_core::geometry::{
    classify_point, complex_distance_sided, default_tolerance, from_oblate, grad_pq, jacobian_volume, to_cylindrical,
    to_oblate,
};
use cxpt_core::numerics::FdScheme;
use cxpt_core::potential::{holomorphic_potential, newtonian, regularized_potential, Regularized};
use cxpt_core::source::{
    centroid, descent_check, moments, regularized_action, singular_action, singular_action_even, singular_action_odd,
    singular_action_r3, singular_action_r4, SourceParts,
};
use cxpt_core::wave::{extend, solve_cauchy, wave_residual, CauchyData, Lattice, SpacetimeField};
use cxpt_core::{Complex64, ComplexPoint, DiskSide, Error, FnField, SourceAction, TestField};
use serde::Serialize;

use crate::config::{resolve_config, Config, Format};
use crate::fields::{parse_vector, FieldSpec};
use crate::report::{cx_vec, to_json, Cx, MvJson};
use crate::verify::{parse_suite, run_suite, summary_line, CriterionReport};

/// Exit code for invalid input.
pub const EXIT_INVALID: i32 = 1;
/// Exit code for numerical failure or a tolerance exceeded.
pub const EXIT_NUMERICAL: i32 = 2;

/// Comma-separated real vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(pub Vec<f64>);

impl FromStr for Vector {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_vector(s).map(Vector)
    }
}

#[derive(Debug, Parser)]
#[command(name = "cxpt", version, about = "Complex-distance potential theory: evaluation and verification")]
pub struct Cli {
    /// Configuration file; overrides CXPT_CONFIG.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Complex distance, branch class and oblate coordinates of x + iy.
    Gamma(GammaArgs),
    /// Newtonian, holomorphic or regularized potential.
    Potential(PotentialArgs),
    /// Action of the extended source on a test field.
    SourceAction(SourceArgs),
    /// Monopole and dipole moments, and the centroid when --x is given.
    Moments(MomentArgs),
    /// Descent identity between the n = 3 and n = 4 sources.
    DescentCheck(DescentArgs),
    /// Wave-equation solution (or field extension) on a lattice.
    Wave(WaveArgs),
    /// Finite-difference wave-equation residual of the solver.
    WaveVerify(WaveVerifyArgs),
    /// Multivectors, Cauchy kernel and Borel-Pompeiu formulas.
    #[command(subcommand)]
    Clifford(CliffordCommand),
    /// Run acceptance criteria.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SideArg {
    Front,
    Back,
}

impl From<SideArg> for DiskSide {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Front => DiskSide::Front,
            SideArg::Back => DiskSide::Back,
        }
    }
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Vector,
    /// Imaginary part; zero when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<Vector>,
    /// Face of the branch disk for points on it.
    #[arg(long, value_enum)]
    pub side: Option<SideArg>,
    /// Also report cylindrical and oblate coordinates, the volume density and ∇p, ∇q.
    #[arg(long)]
    pub coords: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PotentialKindArg {
    Newtonian,
    Holomorphic,
    Regularized,
}

#[derive(Debug, Args)]
pub struct PotentialArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Vector,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<Vector>,
    #[arg(long, value_enum, default_value = "holomorphic")]
    pub kind: PotentialKindArg,
    /// Spheroid parameter of the regularized potential.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, value_enum)]
    pub side: Option<SideArg>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    /// Explicit formula for n = 3, 4; general formulas for n = 5, 6.
    Auto,
    R3,
    R4,
    Even,
    Odd,
    Regularized,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    #[arg(long)]
    pub n: usize,
    /// Source axis; default.a along the last axis when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<Vector>,
    #[arg(long, allow_hyphen_values = true)]
    pub field: FieldSpec,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    #[arg(long)]
    pub eps: Option<f64>,
}

#[derive(Debug, Args)]
pub struct MomentArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Vector,
    /// Real part of the source point; adds its centroid to the report.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<Vector>,
}

#[derive(Debug, Args)]
pub struct DescentArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub field: FieldSpec,
    /// Axis in R^3.
    #[arg(long, allow_hyphen_values = true)]
    pub y: Vector,
    /// Half-width of the window in the added coordinate; |y| + 0.5 when omitted.
    #[arg(long)]
    pub window: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    /// Start of the lattice segment along the first axis.
    #[arg(long, default_value = "-0.5", allow_hyphen_values = true)]
    pub lo: f64,
    #[arg(long, default_value = "0.5", allow_hyphen_values = true)]
    pub hi: f64,
    #[arg(long, default_value = "5")]
    pub count: usize,
    /// Comma-separated times.
    #[arg(long, default_value = "0.5,1", allow_hyphen_values = true)]
    pub times: Vector,
    /// Base point of the segment; the origin when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub origin: Option<Vector>,
}

#[derive(Debug, Args)]
pub struct WaveArgs {
    #[arg(long)]
    pub n: usize,
    /// Initial value v.
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<FieldSpec>,
    /// Initial velocity w; zero when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<FieldSpec>,
    /// Extend a field f(x, s) on R^{n+1} instead of solving for (v, w).
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["v", "w"])]
    pub extend: Option<FieldSpec>,
    /// Slice s of the extended field.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub s: f64,
    #[command(flatten)]
    pub lattice: LatticeArgs,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

#[derive(Debug, Args)]
pub struct WaveVerifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub v: FieldSpec,
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<FieldSpec>,
    #[command(flatten)]
    pub lattice: LatticeArgs,
    /// Difference step; wave.lattice_step when omitted.
    #[arg(long)]
    pub h: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum CliffordCommand {
    /// Cauchy kernel C(z) and the square z·z of the vector z.
    Kernel(KernelArgs),
    /// Borel-Pompeiu formula at a real point.
    BpCheck(BpArgs),
    /// Extended Borel-Pompeiu formula at a complex point.
    EbpCheck(EbpArgs),
    /// Maxwell extension of f = e0 e1 cos x2.
    MaxwellDemo(MaxwellArgs),
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Vector,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<Vector>,
}

#[derive(Debug, Args)]
pub struct FieldOnDomain {
    /// `ball:C1,..,Cn@R` or `box:LO1,..,LOn@HI1,..,HIn`.
    #[arg(long, allow_hyphen_values = true)]
    pub domain: String,
    #[arg(long, allow_hyphen_values = true)]
    pub field: FieldSpec,
    /// Blade multiplying scalar families, as 1-based labels, e.g. 1,2.
    #[arg(long, allow_hyphen_values = true)]
    pub blade: Option<String>,
}

#[derive(Debug, Args)]
pub struct BpArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub on: FieldOnDomain,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Vector,
}

#[derive(Debug, Args)]
pub struct EbpArgs {
    #[command(flatten)]
    pub on: FieldOnDomain,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Vector,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Vector,
}

#[derive(Debug, Args)]
pub struct MaxwellArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "0.2,0.7,-0.1")]
    pub x: Vector,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub s: f64,
    #[arg(long, allow_hyphen_values = true, default_value = "0.4")]
    pub t: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// `all` or comma-separated criterion numbers.
    #[arg(long, default_value = "all")]
    pub suite: String,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonFiniteIntegrand { .. } => Failure::Numerical(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Invalid(msg.into())
}

/// Output plus whether a check in it failed.
struct Report {
    stdout: String,
    failed: bool,
}

impl Report {
    fn json<T: Serialize>(value: &T) -> Self {
        Self {
            stdout: to_json(value),
            failed: false,
        }
    }
}

type Run = Result<Report, Failure>;

/// Parse `args` (including the program name) and execute.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    let cfg = match resolve_config(cli.config.as_deref()) {
        Ok(cfg) => cfg,
        Err(e) => return failure(EXIT_INVALID, &e.to_string()),
    };
    let mut stderr = String::new();
    let result = match cli.command {
        Command::Gamma(a) => gamma(&a),
        Command::Potential(a) => potential(&a),
        Command::SourceAction(a) => source_action(&a, &cfg),
        Command::Moments(a) => moment_report(&a, &cfg),
        Command::DescentCheck(a) => descent(&a, &cfg),
        Command::Wave(a) => wave(&a, &cfg),
        Command::WaveVerify(a) => wave_verify(&a, &cfg),
        Command::Clifford(c) => match c {
            CliffordCommand::Kernel(a) => kernel(&a),
            CliffordCommand::BpCheck(a) => bp_check(&a, &cfg),
            CliffordCommand::EbpCheck(a) => ebp_check(&a, &cfg),
            CliffordCommand::MaxwellDemo(a) => maxwell_demo(&a, &cfg),
        },
        Command::Verify(a) => verify(&a, &cfg, &mut stderr),
    };
    match result {
        Ok(r) => Outcome {
            code: if r.failed { EXIT_NUMERICAL } else { 0 },
            stdout: r.stdout,
            stderr,
        },
        Err(Failure::Invalid(m)) => failure(EXIT_INVALID, &m),
        Err(Failure::Numerical(m)) => failure(EXIT_NUMERICAL, &m),
    }
}

fn failure(code: i32, message: &str) -> Outcome {
    #[derive(Serialize)]
    struct ErrorReport<'a> {
        error: &'a str,
    }
    Outcome {
        code,
        stdout: String::new(),
        stderr: to_json(&ErrorReport { error: message }),
    }
}

fn check_dim(n: usize, v: &[f64], what: &str) -> Result<(), Failure> {
    if v.len() != n {
        return Err(invalid(format!("--{what} has {} components but --n is {n}", v.len())));
    }
    Ok(())
}

fn point(n: usize, x: &Vector, y: Option<&Vector>) -> Result<ComplexPoint, Failure> {
    check_dim(n, &x.0, "x")?;
    let y = match y {
        Some(y) => {
            check_dim(n, &y.0, "y")?;
            y.0.clone()
        }
        None => vec![0.0; n],
    };
    Ok(ComplexPoint::new(x.0.clone(), y)?)
}

fn field_error(e: crate::fields::FieldSpecError) -> Failure {
    invalid(e.to_string())
}

#[derive(Serialize)]
struct CoordsReport {
    rho: Option<f64>,
    zeta: Option<f64>,
    sigma: Option<Vec<f64>>,
    jacobian: Option<f64>,
    grad_p: Option<Vec<f64>>,
    grad_q: Option<Vec<f64>>,
    /// `|from_oblate(to_oblate(x)) − x|`.
    roundtrip_error: Option<f64>,
}

#[derive(Serialize)]
struct GammaReport {
    p: f64,
    q: f64,
    class: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    coords: Option<CoordsReport>,
}

fn gamma(a: &GammaArgs) -> Run {
    let z = point(a.n, &a.x, a.y.as_ref())?;
    let side = a.side.map(DiskSide::from);
    let g = complex_distance_sided(&z, side.unwrap_or_default());
    let class = classify_point(&z.x, &z.y, default_tolerance(z.a()), side).name();
    let coords = a.coords.then(|| {
        let cyl = to_cylindrical(&z.x, &z.y).ok();
        let oblate = to_oblate(&z.x, &z.y).ok();
        let roundtrip = oblate.as_ref().and_then(|o| from_oblate(o, &z.y).ok()).map(|back| {
            back.iter().zip(&z.x).map(|(u, v)| (u - v) * (u - v)).sum::<f64>().sqrt()
        });
        let grads = grad_pq(&z.x, &z.y).ok();
        CoordsReport {
            rho: cyl.as_ref().map(|c| c.rho),
            zeta: cyl.as_ref().map(|c| c.zeta),
            sigma: oblate.and_then(|o| o.sigma),
            jacobian: jacobian_volume(g.p, g.q, z.a(), a.n).ok(),
            grad_p: grads.as_ref().map(|g| g.0.clone()),
            grad_q: grads.map(|g| g.1),
            roundtrip_error: roundtrip,
        }
    });
    Ok(Report::json(&GammaReport { p: g.p, q: g.q, class, coords }))
}

fn potential(a: &PotentialArgs) -> Run {
    #[derive(Serialize)]
    struct Value {
        kind: &'static str,
        value: Cx,
    }
    #[derive(Serialize)]
    struct Jump {
        kind: &'static str,
        inside: Cx,
        outside: Cx,
    }
    let z = point(a.n, &a.x, a.y.as_ref())?;
    match a.kind {
        PotentialKindArg::Newtonian => {
            if z.a() != 0.0 {
                return Err(invalid("the Newtonian potential takes a real point; drop --y"));
            }
            let v = newtonian(&z.x, a.n)?;
            Ok(Report::json(&Value { kind: "newtonian", value: Complex64::new(v, 0.0).into() }))
        }
        PotentialKindArg::Holomorphic => {
            let v = holomorphic_potential(&z, a.n, a.side.map(DiskSide::from))?;
            Ok(Report::json(&Value { kind: "holomorphic", value: v.into() }))
        }
        PotentialKindArg::Regularized => {
            let eps = a.eps.ok_or_else(|| invalid("--kind regularized needs --eps"))?;
            Ok(match regularized_potential(&z, a.n, eps)? {
                Regularized::Value(v) => Report::json(&Value { kind: "regularized", value: v.into() }),
                Regularized::Jump { inside, outside } => Report::json(&Jump {
                    kind: "regularized",
                    inside: inside.into(),
                    outside: outside.into(),
                }),
            })
        }
    }
}

fn axis_or_default(n: usize, y: Option<&Vector>, cfg: &Config) -> Result<Vec<f64>, Failure> {
    match y {
        Some(y) => {
            check_dim(n, &y.0, "y")?;
            Ok(y.0.clone())
        }
        None => {
            let mut y = vec![0.0; n];
            if n > 0 {
                y[n - 1] = cfg.default_a;
            }
            Ok(y)
        }
    }
}

#[derive(Serialize)]
struct PartsJson {
    rim: Cx,
    single_layer: Cx,
    double_layer: Cx,
}

impl From<SourceParts> for PartsJson {
    fn from(p: SourceParts) -> Self {
        Self {
            rim: p.rim.into(),
            single_layer: p.single_layer.into(),
            double_layer: p.double_layer.into(),
        }
    }
}

#[derive(Serialize)]
struct ActionReport {
    method: &'static str,
    value_re: f64,
    value_im: f64,
    parts: Option<PartsJson>,
    err_estimate: f64,
}

fn source_action(a: &SourceArgs, cfg: &Config) -> Run {
    let y = axis_or_default(a.n, a.y.as_ref(), cfg)?;
    let f = a.field.scalar(a.n).map_err(field_error)?;
    let f = &*f;
    let src = &cfg.source;
    let (method, s): (&'static str, SourceAction) = match a.method {
        MethodArg::Auto => ("auto", singular_action(f, &y, src)?),
        MethodArg::R3 => ("r3", singular_action_r3(f, &y, src)?),
        MethodArg::R4 => ("r4", singular_action_r4(f, &y, src)?),
        MethodArg::Even => ("even", singular_action_even(f, &y, src)?),
        MethodArg::Odd => ("odd", singular_action_odd(f, &y, src)?),
        MethodArg::Regularized => {
            let eps = a.eps.ok_or_else(|| invalid("--method regularized needs --eps"))?;
            ("regularized", regularized_action(f, &y, eps, src)?)
        }
    };
    Ok(Report::json(&ActionReport {
        method,
        value_re: s.value.re,
        value_im: s.value.im,
        parts: s.parts.map(PartsJson::from),
        err_estimate: s.err_estimate,
    }))
}

fn moment_report(a: &MomentArgs, cfg: &Config) -> Run {
    #[derive(Serialize)]
    struct MomentReport {
        #[serde(rename = "Q_re")]
        q_re: f64,
        #[serde(rename = "Q_im")]
        q_im: f64,
        #[serde(rename = "P")]
        p: Vec<Cx>,
        #[serde(skip_serializing_if = "Option::is_none")]
        centroid: Option<Vec<Cx>>,
    }
    check_dim(a.n, &a.y.0, "y")?;
    let (q, p) = moments(a.n, &a.y.0, &cfg.source)?;
    let centroid = match &a.x {
        Some(x) => Some(cx_vec(&centroid(&point(a.n, x, Some(&a.y))?, &cfg.source)?)),
        None => None,
    };
    Ok(Report::json(&MomentReport {
        q_re: q.re,
        q_im: q.im,
        p: cx_vec(&p),
        centroid,
    }))
}

fn descent(a: &DescentArgs, cfg: &Config) -> Run {
    #[derive(Serialize)]
    struct DescentReport {
        lhs: Cx,
        rhs: Cx,
        gap: f64,
        tolerance: f64,
        passed: bool,
    }
    check_dim(3, &a.y.0, "y")?;
    let f = a.field.scalar(3).map_err(field_error)?;
    let a_len = a.y.0.iter().map(|v| v * v).sum::<f64>().sqrt();
    let window = a.window.unwrap_or(a_len + 0.5);
    let d = descent_check(&*f, &a.y.0, window, &cfg.source)?;
    let tolerance = cfg.tolerances.descent;
    let passed = d.gap() <= tolerance;
    Ok(Report {
        stdout: to_json(&DescentReport {
            lhs: d.lhs.value.into(),
            rhs: d.rhs.value.into(),
            gap: d.gap(),
            tolerance,
            passed,
        }),
        failed: !passed,
    })
}

fn lattice(n: usize, l: &LatticeArgs, spacing: f64) -> Result<Lattice, Failure> {
    if l.count == 0 {
        return Err(invalid("--count must be positive"));
    }
    let origin = match &l.origin {
        Some(o) => {
            check_dim(n, &o.0, "origin")?;
            o.0.clone()
        }
        None => vec![0.0; n],
    };
    let mut grid = Lattice::line(n, l.lo, l.hi, l.count, l.times.0.clone(), spacing);
    for p in &mut grid.points {
        p.iter_mut().zip(&origin).for_each(|(c, o)| *c += o);
    }
    Ok(grid)
}

fn cauchy_data(n: usize, v: &FieldSpec, w: Option<&FieldSpec>) -> Result<CauchyData, Failure> {
    let v = v.scalar(n).map_err(field_error)?;
    let w = match w {
        Some(w) => w.scalar(n).map_err(field_error)?,
        None => FieldSpec::Constant(Complex64::default()).scalar(n).map_err(field_error)?,
    };
    Ok(CauchyData::new(v, w)?)
}

fn wave(a: &WaveArgs, cfg: &Config) -> Run {
    let grid = lattice(a.n, &a.lattice, cfg.lattice_step)?;
    let solve: Box<dyn Fn(&[f64], f64) -> cxpt_core::Result<Complex64>> = match (&a.extend, &a.v) {
        (Some(f), _) => {
            let g = f.scalar(a.n + 1).map_err(field_error)?;
            let n = a.n;
            let eval = {
                let g = g.clone();
                move |x: &[f64], s: f64| {
                    let mut p = x.to_vec();
                    p.push(s);
                    g.eval(&p)
                }
            };
            let mut field = SpacetimeField::new(n, eval).with_smoothness(g.smoothness());
            let mut probe = vec![0.0; n + 1];
            probe[n] = a.s;
            if g.gradient(&probe).is_some() {
                field = field.with_ds(move |x, s| {
                    let mut p = x.to_vec();
                    p.push(s);
                    g.gradient(&p).map(|d| d[n]).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
                });
            }
            let (s, wave_cfg) = (a.s, cfg.wave);
            Box::new(move |x, t| extend(&field, x, s, t, &wave_cfg))
        }
        (None, Some(v)) => {
            let data = cauchy_data(a.n, v, a.w.as_ref())?;
            let wave_cfg = cfg.wave;
            Box::new(move |x, t| solve_cauchy(&data, x, t, &wave_cfg))
        }
        (None, None) => return Err(invalid("wave needs --v (and optionally --w) or --extend")),
    };
    let mut rows = Vec::new();
    for x in &grid.points {
        for &t in &grid.times {
            rows.push((x.clone(), t, solve(x, t)?));
        }
    }
    let format = match a.format {
        Some(FormatArg::Csv) => Format::Csv,
        Some(FormatArg::Json) => Format::Json,
        None => cfg.format,
    };
    let stdout = match format {
        Format::Csv => {
            let mut s = String::new();
            let head: Vec<String> = (1..=a.n).map(|i| format!("x{i}")).collect();
            let _ = writeln!(s, "{},t,re_u,im_u", head.join(","));
            for (x, t, u) in &rows {
                let xs: Vec<String> = x.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(s, "{},{t},{},{}", xs.join(","), u.re, u.im);
            }
            s
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                x: Vec<f64>,
                t: f64,
                u: Cx,
            }
            #[derive(Serialize)]
            struct Rows {
                rows: Vec<Row>,
            }
            to_json(&Rows {
                rows: rows.into_iter().map(|(x, t, u)| Row { x, t, u: u.into() }).collect(),
            })
        }
    };
    Ok(Report { stdout, failed: false })
}

fn wave_verify(a: &WaveVerifyArgs, cfg: &Config) -> Run {
    #[derive(Serialize)]
    struct ResidualReport {
        residual: f64,
        lattice_step: f64,
        points: usize,
        times: Vec<f64>,
        tolerance: f64,
        passed: bool,
    }
    let h = a.h.unwrap_or(cfg.lattice_step);
    let grid = lattice(a.n, &a.lattice, h)?;
    let data = cauchy_data(a.n, &a.v, a.w.as_ref())?;
    let residual = wave_residual(&data, &grid, &cfg.wave)?;
    let tolerance = cfg.tolerances.wave_residual;
    let passed = residual <= tolerance;
    Ok(Report {
        stdout: to_json(&ResidualReport {
            residual,
            lattice_step: h,
            points: grid.points.len(),
            times: grid.times.clone(),
            tolerance,
            passed,
        }),
        failed: !passed,
    })
}

fn kernel(a: &KernelArgs) -> Run {
    #[derive(Serialize)]
    struct KernelReport {
        kernel: MvJson,
        z_squared: MvJson,
        gamma_squared: Cx,
    }
    let z = point(a.n, &a.x, a.y.as_ref())?;
    let k = cauchy_kernel(&z)?;
    let zv = Multivector::vector(1, &z.coords());
    let zz = zv.mv_mul(&zv)?;
    Ok(Report::json(&KernelReport {
        kernel: (&k).into(),
        z_squared: (&zz).into(),
        gamma_squared: z.square().into(),
    }))
}

/// `ball:C@R` or `box:LO@HI`.
pub fn parse_domain(spec: &str, n: usize, cfg: &Config) -> Result<Domain, String> {
    let (kind, rest) = spec.split_once(':').ok_or_else(|| format!("domain {spec:?} is not KIND:PARAMS"))?;
    let (left, right) = rest
        .split_once('@')
        .ok_or_else(|| format!("domain {spec:?}: expected ball:C@R or box:LO@HI"))?;
    let left = parse_vector(left)?;
    if left.len() != n {
        return Err(format!("domain {spec:?} has dimension {} but n = {n}", left.len()));
    }
    let domain = match kind.trim() {
        "ball" => {
            let r: f64 = right.trim().parse().map_err(|_| format!("bad radius {right:?}"))?;
            Domain::ball(left, r)
        }
        "box" => Domain::cuboid(left, parse_vector(right)?),
        other => return Err(format!("unknown domain kind {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    Ok(domain.with_orders(cfg.boundary_order, 2 * cfg.boundary_order, cfg.volume_order))
}

fn parse_blade(s: Option<&str>) -> Result<Vec<usize>, Failure> {
    match s {
        None => Ok(Vec::new()),
        Some(s) if s.trim().is_empty() => Ok(Vec::new()),
        Some(s) => s
            .split(',')
            .map(|l| l.trim().parse::<usize>().map_err(|_| invalid(format!("bad blade label {l:?}"))))
            .collect(),
    }
}

fn field_on(on: &FieldOnDomain, n: usize, cfg: &Config) -> Result<(MultivectorField, Domain), Failure> {
    let blade = parse_blade(on.blade.as_deref())?;
    let f = on.field.multivector(n, &blade).map_err(field_error)?;
    let m = parse_domain(&on.domain, n, cfg).map_err(invalid)?;
    Ok((f, m))
}

fn bp_config(cfg: &Config) -> BpConfig {
    BpConfig {
        fd: FdScheme::with_step(cfg.clifford_step),
        ..BpConfig::default()
    }
}

fn bp_check(a: &BpArgs, cfg: &Config) -> Run {
    #[derive(Serialize)]
    struct BpReport {
        inside: bool,
        boundary: MvJson,
        volume: MvJson,
        value: MvJson,
        expected: MvJson,
        dirac: MvJson,
        /// Relative inside `M`, absolute outside.
        error: f64,
        tolerance: f64,
        passed: bool,
    }
    check_dim(a.n, &a.x.0, "x")?;
    let (f, m) = field_on(&a.on, a.n, cfg)?;
    let r = borel_pompeiu(&f, &m, &a.x.0, &bp_config(cfg))?;
    let inside = m.contains(&a.x.0);
    let fx = f.eval(&a.x.0);
    let mode = if f.polynomial().is_some() { DiracMode::ExactPoly } else { DiracMode::Fd };
    let df = dirac_apply(&f, &a.x.0, Side::Left, mode, &FdScheme::with_step(cfg.clifford_step))?;
    let (expected, error) = if inside {
        let scale = if fx.norm() > 0.0 { fx.norm() } else { 1.0 };
        (fx.clone(), r.value.max_abs_diff(&fx) / scale)
    } else {
        (Multivector::zero(a.n, 1), r.value.norm())
    };
    let tolerance = cfg.tolerances.clifford;
    let passed = error <= tolerance;
    Ok(Report {
        stdout: to_json(&BpReport {
            inside,
            boundary: (&r.boundary).into(),
            volume: (&r.volume).into(),
            value: (&r.value).into(),
            expected: (&expected).into(),
            dirac: (&df).into(),
            error,
            tolerance,
            passed,
        }),
        failed: !passed,
    })
}

/// `∫ δ̃(x′ − z) χ_M f(x′) dx′` by source actions on each blade, when the
/// branch disk is clearly inside or outside `M`.
fn ebp_oracle(f: &MultivectorField, m: &Domain, z: &ComplexPoint, cfg: &Config) -> Result<Option<Multivector>, Failure> {
    let (n, a) = (z.dim(), z.a());
    let sd = m.signed_distance(&z.x);
    if sd < -a {
        return Ok(Some(Multivector::zero(n, 1)));
    }
    if sd <= a || n != 3 {
        return Ok(None);
    }
    let axis: Vec<f64> = z.y.iter().map(|v| -v).collect();
    let mut out = Multivector::zero(n, 1);
    for mask in 0..(1u32 << n) {
        let (g, x) = (f.clone(), z.x.clone());
        let comp: Arc<dyn TestField> = Arc::new(FnField::new(n, move |u| {
            let p: Vec<f64> = x.iter().zip(u).map(|(a, b)| a + b).collect();
            g.eval(&p).coeff(mask)
        }));
        out.set(mask, singular_action_r3(&*comp, &axis, &cfg.source)?.value);
    }
    Ok(Some(out))
}

fn ebp_check(a: &EbpArgs, cfg: &Config) -> Run {
    #[derive(Serialize)]
    struct EbpReport {
        regular: bool,
        boundary: MvJson,
        volume: MvJson,
        value: MvJson,
        oracle: Option<MvJson>,
        gap: Option<f64>,
        tolerance: f64,
        passed: Option<bool>,
    }
    let n = a.x.0.len();
    let z = point(n, &a.x, Some(&a.y))?;
    let (f, m) = field_on(&a.on, n, cfg)?;
    let regular = regular_point(&z, &m)?;
    if !regular {
        return Err(Failure::Invalid(Error::NotRegular.to_string()));
    }
    let r = extended_borel_pompeiu(&f, &m, &z, &bp_config(cfg))?;
    let oracle = ebp_oracle(&f, &m, &z, cfg)?;
    let gap = oracle.as_ref().map(|o| r.value.max_abs_diff(o));
    let tolerance = cfg.tolerances.clifford;
    let passed = gap.map(|g| g <= tolerance);
    Ok(Report {
        stdout: to_json(&EbpReport {
            regular,
            boundary: (&r.boundary).into(),
            volume: (&r.volume).into(),
            value: (&r.value).into(),
            oracle: oracle.as_ref().map(MvJson::from),
            gap,
            tolerance,
            passed,
        }),
        failed: passed == Some(false),
    })
}

fn maxwell_demo(a: &MaxwellArgs, cfg: &Config) -> Run {
    #[derive(Serialize)]
    struct MaxwellReport {
        f_tilde: MvJson,
        j_tilde: MvJson,
        f_exact: MvJson,
        j_exact: MvJson,
        continuity_residual: f64,
        dirac_residual: f64,
        tolerance: f64,
        passed: bool,
    }
    check_dim(3, &a.x.0, "x")?;
    let mcfg = MaxwellConfig {
        wave: cfg.wave,
        fd: FdScheme::with_step(cfg.clifford_step),
        ..MaxwellConfig::default()
    };
    let x = &a.x.0;
    let p = maxwell_extend(&bivector_example(), x, a.s, a.t, &mcfg)?;
    let blade = |l: &[usize]| Multivector::blade(4, 0, l).expect("valid labels");
    let f_exact = blade(&[0, 1]) * (x[1].cos() * a.t.cos());
    let j_exact = blade(&[2, 0, 1]) * (-x[1].sin() * a.t.cos())
        + blade(&[1]) * (Complex64::new(0.0, 1.0) * x[1].cos() * a.t.sin());
    let tolerance = cfg.tolerances.clifford;
    let passed = p.continuity_residual <= tolerance;
    Ok(Report {
        stdout: to_json(&MaxwellReport {
            f_tilde: (&p.f_tilde).into(),
            j_tilde: (&p.j_tilde).into(),
            f_exact: (&f_exact).into(),
            j_exact: (&j_exact).into(),
            continuity_residual: p.continuity_residual,
            dirac_residual: p.dirac_residual,
            tolerance,
            passed,
        }),
        failed: !passed,
    })
}

fn verify(a: &VerifyArgs, cfg: &Config, stderr: &mut String) -> Run {
    #[derive(Serialize)]
    struct SuiteReport {
        passed: bool,
        criteria: Vec<CriterionReport>,
    }
    let ids = parse_suite(&a.suite).map_err(invalid)?;
    let criteria = run_suite(&ids, cfg, |r| {
        let _ = writeln!(stderr, "{}", summary_line(r));
    });
    let passed = criteria.iter().all(|c| c.passed);
    Ok(Report {
        stdout: to_json(&SuiteReport { passed, criteria }),
        failed: !passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("cxpt").chain(args.iter().copied()))
    }

    fn json(o: &Outcome) -> serde_json::Value {
        serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {o:?}"))
    }

    #[test]
    fn gamma_example() {
        let o = run_args(&["gamma", "--n", "3", "--x", "2,0,0", "--y", "0,0,1"]);
        assert_eq!(o.code, 0, "{o:?}");
        let v = json(&o);
        assert!((v["p"].as_f64().unwrap() - 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(v["q"].as_f64().unwrap(), 0.0);
        assert_eq!(v["class"], "Regular");
        assert!(o.stdout.starts_with("{\"p\":"));
    }

    #[test]
    fn gamma_with_coordinates() {
        let o = run_args(&["gamma", "--n", "3", "--x", "1,0,1", "--y", "0,0,1", "--coords"]);
        let v = json(&o);
        assert!((v["p"].as_f64().unwrap() - 1.2720196).abs() < 1e-7);
        assert!(v["coords"]["roundtrip_error"].as_f64().unwrap() < 1e-12);
        let rim = run_args(&["gamma", "--n", "3", "--x", "1,0,0", "--y", "0,0,1"]);
        assert_eq!(json(&rim)["class"], "OnRim");
    }

    #[test]
    fn moments_example() {
        let o = run_args(&["moments", "--n", "3", "--y", "0,0,1"]);
        assert_eq!(o.code, 0, "{o:?}");
        let v = json(&o);
        assert!((v["Q_re"].as_f64().unwrap() - 1.0).abs() < 1e-10);
        assert!(v["Q_im"].as_f64().unwrap().abs() < 1e-10);
        assert!((v["P"][2]["im"].as_f64().unwrap() + 1.0).abs() < 1e-10);
        assert!(v["P"][0]["re"].as_f64().unwrap().abs() < 1e-10);
    }

    #[test]
    fn negative_vectors_parse() {
        let o = run_args(&["potential", "--n", "3", "--x", "-2,0,0"]);
        assert_eq!(o.code, 0, "{o:?}");
        assert!((json(&o)["value"]["re"].as_f64().unwrap() + 1.0 / (8.0 * std::f64::consts::PI)).abs() < 1e-12);
    }

    #[test]
    fn invalid_input_exits_with_one() {
        let o = run_args(&["gamma", "--n", "3", "--x", "1,0", "--y", "0,0,1"]);
        assert_eq!(o.code, EXIT_INVALID);
        assert!(o.stderr.contains("error"));
        let o = run_args(&["gamma", "--bogus"]);
        assert_eq!(o.code, EXIT_INVALID);
        assert!(o.stderr.contains("Usage"), "{}", o.stderr);
        let o = run_args(&["potential", "--n", "3", "--x", "1,0,0", "--y", "0,0,1"]);
        assert_eq!(o.code, EXIT_INVALID, "rim is singular");
        assert_eq!(run_args(&["frobnicate"]).code, EXIT_INVALID);
        assert_eq!(run_args(&["verify", "--suite", "99"]).code, EXIT_INVALID);
    }

    #[test]
    fn help_exits_with_zero() {
        let o = run_args(&["--help"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("source-action"));
    }

    #[test]
    fn source_action_reports_parts() {
        let o = run_args(&["source-action", "--n", "3", "--y", "0,0,1", "--field", "coordinate:3", "--method", "r3"]);
        let v = json(&o);
        assert!((v["value_im"].as_f64().unwrap() + 1.0).abs() < 1e-9);
        assert!(v["parts"]["rim"]["re"].is_f64());
        let o = run_args(&["source-action", "--n", "4", "--field", "constant:1"]);
        assert!((json(&o)["value_re"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn wave_csv_has_documented_columns() {
        let o = run_args(&[
            "wave", "--n", "3", "--v", "constant:0", "--w", "constant:1", "--count", "2", "--times", "0.5", "--format", "csv",
        ]);
        assert_eq!(o.code, 0, "{o:?}");
        let lines: Vec<&str> = o.stdout.lines().collect();
        assert_eq!(lines[0], "x1,x2,x3,t,re_u,im_u");
        assert_eq!(lines.len(), 3);
        let u: f64 = lines[1].split(',').nth(4).unwrap().parse().unwrap();
        assert!((u - 0.5).abs() < 1e-10);
    }

    #[test]
    fn identical_invocations_are_byte_identical() {
        let args = ["source-action", "--n", "3", "--y", "0.2,0.3,0.5", "--field", "gaussian:1"];
        assert_eq!(run_args(&args), run_args(&args));
        let args = ["verify", "--suite", "1,12"];
        let (a, b) = (run_args(&args), run_args(&args));
        assert_eq!(a.code, 0, "{}", a.stderr);
        assert_eq!(a.stdout, b.stdout);
    }

    #[test]
    fn clifford_kernel_squares_to_gamma() {
        let o = run_args(&["clifford", "kernel", "--n", "3", "--x", "0,0,1", "--y", "0,0,1"]);
        let v = json(&o);
        // z·z = γ² = 2i
        assert_eq!(v["z_squared"]["terms"][0]["blade"], serde_json::json!([]));
        assert!((v["z_squared"]["terms"][0]["im"].as_f64().unwrap() - 2.0).abs() < 1e-12);
        assert!((v["gamma_squared"]["im"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bp_check_reproduces_a_constant() {
        let o = run_args(&["clifford", "bp-check", "--n", "3", "--domain", "ball:0,0,0@1", "--field", "constant:2", "--x", "0.1,0,0"]);
        assert_eq!(o.code, 0, "{o:?}");
        assert!(json(&o)["passed"].as_bool().unwrap());
        let out = run_args(&["clifford", "bp-check", "--n", "3", "--domain", "ball:0,0,0@1", "--field", "constant:2", "--x", "2,0,0"]);
        assert!(!json(&out)["inside"].as_bool().unwrap());
        let edge = run_args(&["clifford", "bp-check", "--n", "3", "--domain", "ball:0,0,0@1", "--field", "constant:2", "--x", "1,0,0"]);
        assert_eq!(edge.code, EXIT_INVALID);
    }

    #[test]
    fn domains_parse() {
        let cfg = Config::default();
        assert!(parse_domain("ball:0,0,0@1", 3, &cfg).is_ok());
        assert!(parse_domain("box:-1,-1@1,2", 2, &cfg).is_ok());
        assert!(parse_domain("box:1,1@0,2", 2, &cfg).is_err());
        assert!(parse_domain("ball:0,0@1", 3, &cfg).is_err());
        assert!(parse_domain("torus:0@1", 1, &cfg).is_err());
    }
}
