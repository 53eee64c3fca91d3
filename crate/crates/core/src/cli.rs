//! Command-line front end for the `lcheb` binary.
//!
//! Every run prints its primary output to stdout and writes the same bytes to
//! `<out-dir>/<verb>.<csv|json>`, together with `<verb>.manifest.json`
//! recording the resolved options, seed, duration and SHA-256 digests of the
//! written files. The output directory is `--out-dir`, else `$LCHEB_OUT_DIR`,
//! else `lcheb-out`.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::chebinterp::{Interpolator, DEFAULT_SEED};
use crate::convergence::{check_grid, convergence_table, sup_error, TestFunction};
use crate::error::{Error, Result};
use crate::fourier_lebesgue::{
    discrete_lebesgue_with, fourier_lebesgue, ratio_table, Family, LebesgueEstimate, QuadratureSpec, Which,
};
use crate::kernel_identities::{run_suite, Suite};
use crate::lattice::{gamma_bar, gamma_set, sigma_set, symmetrize, xi_set_standard, Config, IndexSet, Rational};
use crate::nodes::{fmt_sig17, NodeTable, SampleVector};

pub const OUT_DIR_ENV: &str = "LCHEB_OUT_DIR";
pub const DEFAULT_OUT_DIR: &str = "lcheb-out";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

#[derive(Debug, Parser, Serialize)]
#[command(name = "lcheb", version, about = "Lissajous-Chebyshev interpolation and Lebesgue constants")]
pub struct Cli {
    /// Emit JSON instead of CSV/text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Cap on worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Directory for output files and the run manifest.
    #[arg(long, global = true, env = OUT_DIR_ENV)]
    pub out_dir: Option<PathBuf>,

    /// Random seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum Command {
    /// Emit an index set.
    Gamma(SetArgs),
    /// Emit the node table of a configuration.
    Nodes(CfgArgs),
    /// Interpolate samples or a built-in function.
    Interp(InterpArgs),
    /// Discrete or Fourier Lebesgue constant.
    Lebesgue(LebesgueArgs),
    /// Lebesgue constants over a family divided by their log growth.
    Table(TableArgs),
    /// Run the kernel and set identity suite.
    Verify(VerifyArgs),
    /// Sup-norm error of interpolants along n = (k, k+1).
    Convergence(ConvergenceArgs),
}

#[derive(Debug, Args, Serialize, Clone)]
pub struct CfgArgs {
    /// 1 or 2.
    #[arg(long, default_value_t = 2)]
    pub eps: i64,
    /// Pairwise coprime frequencies, e.g. 2,3.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<i64>,
    /// Parity vector; defaults to zeros.
    #[arg(long, value_delimiter = ',')]
    pub kappa: Vec<i64>,
}

impl CfgArgs {
    fn config(&self) -> Result<Config> {
        let kappa = if self.kappa.is_empty() { vec![0; self.n.len()] } else { self.kappa.clone() };
        as_usage(Config::new(self.eps, self.n.clone(), kappa))
    }
}

/// A configuration rejected while reading flags is a usage error.
fn as_usage(c: Result<Config>) -> Result<Config> {
    c.map_err(|e| match e {
        Error::Validation(m) => Error::Parse(m),
        other => other,
    })
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
pub enum SetKind {
    Gamma,
    Gammabar,
    Sigma,
    Xi,
}

#[derive(Debug, Args, Serialize, Clone)]
pub struct SetArgs {
    #[arg(long, value_enum, default_value = "gamma")]
    pub set: SetKind,
    #[arg(long)]
    pub eps: Option<i64>,
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<i64>,
    #[arg(long, value_delimiter = ',')]
    pub kappa: Vec<i64>,
    /// Dilation vector for gammabar, sigma and xi.
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<i64>,
    /// Lower threshold, e.g. 1/2.
    #[arg(long)]
    pub r: Option<String>,
    /// Upper threshold of xi.
    #[arg(long)]
    pub s: Option<String>,
    /// Symmetrize under coordinate sign flips.
    #[arg(long)]
    pub sym: bool,
}

fn rational(s: &Option<String>, default: Rational) -> Result<Rational> {
    s.as_deref().map(str::parse).transpose().map(|v| v.unwrap_or(default))
}

fn need_m(m: &[i64]) -> Result<()> {
    if m.is_empty() {
        return Err(Error::Parse("this set needs --m".into()));
    }
    Ok(())
}

impl SetArgs {
    fn build(&self) -> Result<IndexSet> {
        let set = match self.set {
            SetKind::Gamma => {
                if self.n.is_empty() {
                    return Err(Error::Parse("the gamma set needs --n".into()));
                }
                let cfg = CfgArgs { eps: self.eps.unwrap_or(2), n: self.n.clone(), kappa: self.kappa.clone() };
                gamma_set(&cfg.config()?)
            }
            SetKind::Gammabar => {
                need_m(&self.m)?;
                gamma_bar(&self.m)?
            }
            SetKind::Sigma => {
                need_m(&self.m)?;
                sigma_set(&self.m, rational(&self.r, Rational::integer(1))?)?
            }
            SetKind::Xi => {
                need_m(&self.m)?;
                xi_set_standard(&self.m, rational(&self.r, Rational::integer(0))?, rational(&self.s, Rational::integer(1))?)?
            }
        };
        Ok(if self.sym { symmetrize(&set) } else { set })
    }
}

#[derive(Debug, Args, Serialize)]
pub struct InterpArgs {
    #[command(flatten)]
    pub cfg: CfgArgs,
    /// Samples CSV (header line, value in the last column, node table order).
    #[arg(long, conflicts_with = "function")]
    pub samples: Option<PathBuf>,
    /// Built-in test function: exp, runge or abs32.
    #[arg(long, default_value = "exp")]
    pub function: String,
    /// Check grid points per axis.
    #[arg(long, default_value_t = 101)]
    pub check_grid: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
pub enum Mode {
    Discrete,
    Fourier,
}

#[derive(Debug, Args, Serialize, Clone)]
pub struct QuadArgs {
    /// Fixed quadrature points per axis (disables doubling).
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, default_value_t = 6)]
    pub max_doublings: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub rel_tol: f64,
}

impl QuadArgs {
    fn spec(&self) -> QuadratureSpec {
        match self.points {
            Some(m) => QuadratureSpec::fixed(m),
            None => QuadratureSpec { points_per_dim: None, max_doublings: self.max_doublings, rel_tol: self.rel_tol },
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct LebesgueArgs {
    #[arg(long, value_enum)]
    pub mode: Mode,
    #[command(flatten)]
    pub set: SetArgs,
    /// Search grid points per axis for discrete mode.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Skip the golden-section refinement.
    #[arg(long)]
    pub no_refine: bool,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
pub enum FamilyKind {
    Gamma,
    Gammabar,
    Sigma,
}

#[derive(Debug, Args, Serialize)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Dilations: `2,4,8` gives diagonal vectors in `--dim` dimensions (all
    /// combinations with `--product`); `2,3;4,5` lists vectors explicitly.
    #[arg(long)]
    pub m_list: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long)]
    pub product: bool,
    /// Values of k for the gamma family, which uses n = (k, k+1).
    #[arg(long, value_delimiter = ',')]
    pub k_list: Vec<i64>,
    #[arg(long, default_value_t = 2)]
    pub eps: i64,
    #[arg(long, value_delimiter = ',')]
    pub kappa: Vec<i64>,
    /// Threshold of the sigma family.
    #[arg(long)]
    pub r: Option<String>,
    #[arg(long, default_value_t = 257)]
    pub grid: usize,
    #[arg(long)]
    pub no_refine: bool,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Random points per parameter set.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct ConvergenceArgs {
    #[arg(long, default_value = "exp")]
    pub function: String,
    #[arg(long, default_value_t = 2)]
    pub eps: i64,
    #[arg(long, default_value_t = 2)]
    pub k_min: i64,
    #[arg(long, default_value_t = 12)]
    pub k_max: i64,
    #[arg(long, default_value_t = 101)]
    pub check_grid: usize,
}

#[derive(Debug, Serialize)]
pub struct OutputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub argv: Vec<String>,
    pub options: serde_json::Value,
    pub seed: u64,
    pub duration_seconds: f64,
    pub exit_code: i32,
    pub outputs: Vec<OutputDigest>,
}

/// Primary output of a verb plus its exit code.
struct Output {
    name: &'static str,
    text: String,
    json: bool,
    exit: i32,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_USAGE,
        _ => EXIT_VALIDATION,
    }
}

/// Parses `argv` (including the program name), runs the verb and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let argv: Vec<String> = argv.iter().map(|s| s.to_string_lossy().into_owned()).collect();
    match run_cli(&cli, &argv) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("lcheb: {e}");
            exit_code(&e)
        }
    }
}

fn run_cli(cli: &Cli, argv: &[String]) -> Result<i32> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::Parse("--threads must be positive".into()));
        }
        // a pool that is already initialised (repeated in-process runs) is kept
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let start = Instant::now();
    let out = execute(cli)?;
    let duration = start.elapsed().as_secs_f64();

    print!("{}", out.text);
    let dir = cli.out_dir.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
    std::fs::create_dir_all(&dir)?;
    let ext = match (out.json, out.name) {
        (true, _) => "json",
        (false, "gamma") => "txt",
        _ => "csv",
    };
    let path = dir.join(format!("{}.{ext}", out.name));
    std::fs::write(&path, &out.text)?;
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        argv: argv.to_vec(),
        options: serde_json::to_value(cli)?,
        seed: cli.seed,
        duration_seconds: duration,
        exit_code: out.exit,
        outputs: vec![OutputDigest { path: display(&path), sha256: sha256_hex(out.text.as_bytes()) }],
    };
    let mpath = dir.join(format!("{}.manifest.json", out.name));
    std::fs::write(mpath, serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(out.exit)
}

fn display(p: &Path) -> String {
    p.to_string_lossy().into_owned()
}

fn execute(cli: &Cli) -> Result<Output> {
    let json = cli.json;
    let ok = |name, text| Output { name, text, json, exit: EXIT_OK };
    match &cli.command {
        Command::Gamma(a) => {
            let s = a.build()?;
            Ok(ok("gamma", if json { s.to_json() + "\n" } else { s.to_text() }))
        }
        Command::Nodes(a) => {
            let t = NodeTable::build(&a.config()?);
            Ok(ok("nodes", if json { t.to_json() + "\n" } else { t.to_csv() }))
        }
        Command::Interp(a) => interp(a, json).map(|text| ok("interp", text)),
        Command::Lebesgue(a) => lebesgue(a, json).map(|text| ok("lebesgue", text)),
        Command::Table(a) => table(a, json).map(|text| ok("table", text)),
        Command::Verify(a) => {
            let reports = run_suite(a.suite.parse::<Suite>()?, a.samples, cli.seed)?;
            let exit = if reports.iter().all(|r| r.passed()) { EXIT_OK } else { EXIT_VERIFY_FAILED };
            // reports are JSON whatever the format switch says
            let text = serde_json::to_string_pretty(&reports)? + "\n";
            Ok(Output { name: "verify", text, json: true, exit })
        }
        Command::Convergence(a) => {
            if a.k_min < 1 || a.k_max < a.k_min {
                return Err(Error::Validation("need 1 <= k-min <= k-max".into()));
            }
            let ks: Vec<i64> = (a.k_min..=a.k_max).collect();
            let t = convergence_table(a.function.parse()?, a.eps, &ks, a.check_grid)?;
            Ok(ok("convergence", if json { t.to_json() + "\n" } else { t.to_csv() }))
        }
    }
}

#[derive(Serialize)]
struct InterpReport<'a> {
    config: String,
    nodes: usize,
    function: Option<&'a str>,
    sup_error: Option<f64>,
    node_residual: f64,
    coefficients: serde_json::Value,
}

fn interp(a: &InterpArgs, json: bool) -> Result<String> {
    let cfg = a.cfg.config()?;
    let it = Interpolator::new(&cfg);
    let (samples, func) = match &a.samples {
        Some(path) => (SampleVector::from_csv(&it.table, &std::fs::read_to_string(path)?)?, None),
        None => {
            let f: TestFunction = a.function.parse()?;
            (SampleVector::from_fn(&it.table, |x| f.eval(x)), Some(f))
        }
    };
    let p = it.interpolate(&samples)?;
    let mut node_residual: f64 = 0.0;
    for (row, v) in it.table.rows.iter().zip(&samples.values) {
        node_residual = node_residual.max((p.eval(&row.point)? - v).abs());
    }
    let sup = match func {
        Some(f) => Some(sup_error(&p, |x| f.eval(x), &check_grid(cfg.dim(), a.check_grid)?)?),
        None => None,
    };
    if json {
        let report = InterpReport {
            config: cfg.to_string(),
            nodes: it.num_nodes(),
            function: func.map(TestFunction::name),
            sup_error: sup,
            node_residual,
            coefficients: serde_json::from_str(&p.to_json())?,
        };
        return Ok(serde_json::to_string_pretty(&report)? + "\n");
    }
    let d = cfg.dim();
    let mut out: String = (1..=d).map(|k| format!("g{k},")).collect();
    out.push_str("coeff\n");
    for (g, c) in p.terms() {
        for v in g.coords() {
            out.push_str(&format!("{v},"));
        }
        out.push_str(&fmt_sig17(*c));
        out.push('\n');
    }
    if let Some(s) = sup {
        out.push_str(&format!("# sup_error,{}\n", fmt_sig17(s)));
    }
    out.push_str(&format!("# node_residual,{}\n", fmt_sig17(node_residual)));
    Ok(out)
}

#[derive(Serialize)]
struct LebesgueReport {
    mode: Mode,
    #[serde(flatten)]
    estimate: LebesgueEstimate,
    grid_value: Option<f64>,
    argmax: Option<Vec<f64>>,
}

fn lebesgue(a: &LebesgueArgs, json: bool) -> Result<String> {
    let report = match a.mode {
        Mode::Fourier => LebesgueReport {
            mode: a.mode,
            estimate: fourier_lebesgue(&a.set.build()?, &a.quad.spec())?,
            grid_value: None,
            argmax: None,
        },
        Mode::Discrete => {
            if a.set.set != SetKind::Gamma {
                return Err(Error::Parse("discrete mode needs --set gamma with --n".into()));
            }
            let cfg = CfgArgs { eps: a.set.eps.unwrap_or(2), n: a.set.n.clone(), kappa: a.set.kappa.clone() };
            if cfg.n.is_empty() {
                return Err(Error::Parse("discrete mode needs --n".into()));
            }
            let cfg = cfg.config()?;
            let grid = a.grid.unwrap_or(match cfg.dim() {
                1 => 100_001,
                2 => 401,
                _ => 65,
            });
            let e = discrete_lebesgue_with(&Interpolator::new(&cfg), grid, !a.no_refine)?;
            LebesgueReport { mode: a.mode, estimate: e.estimate, grid_value: Some(e.grid_value), argmax: Some(e.argmax) }
        }
    };
    if json {
        return Ok(serde_json::to_string_pretty(&report)? + "\n");
    }
    let e = &report.estimate;
    let mut out = String::from("value,error_indicator,resolution\n");
    out.push_str(&format!("{},{},{}\n", fmt_sig17(e.value), fmt_sig17(e.error_indicator), e.resolution));
    Ok(out)
}

/// Parses `--m-list`.
pub fn parse_m_list(spec: &str, dim: usize, product: bool) -> Result<Vec<Vec<i64>>> {
    let ints = |s: &str| -> Result<Vec<i64>> {
        s.split(',')
            .map(|v| v.trim().parse::<i64>().map_err(|e| Error::Parse(format!("bad entry {v:?} in --m-list: {e}"))))
            .collect()
    };
    if spec.contains(';') {
        return spec.split(';').map(ints).collect();
    }
    let vals = ints(spec)?;
    if dim == 0 {
        return Err(Error::Parse("--dim must be positive".into()));
    }
    if !product {
        return Ok(vals.iter().map(|&v| vec![v; dim]).collect());
    }
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..dim {
        out = out.into_iter().flat_map(|p| vals.iter().map(move |&v| [p.clone(), vec![v]].concat())).collect();
    }
    Ok(out)
}

fn label(m: &[i64]) -> String {
    let parts: Vec<String> = m.iter().map(|v| v.to_string()).collect();
    format!("m=({})", parts.join(" "))
}

fn table(a: &TableArgs, json: bool) -> Result<String> {
    let which = match a.mode {
        Mode::Discrete => Which::Discrete,
        Mode::Fourier => Which::Fourier,
    };
    let family = match a.family {
        FamilyKind::Gamma => {
            if a.k_list.is_empty() {
                return Err(Error::Parse("the gamma family needs --k-list".into()));
            }
            let kappa = if a.kappa.is_empty() { vec![0, 0] } else { a.kappa.clone() };
            Family::Configs(
                a.k_list.iter().map(|&k| as_usage(Config::new(a.eps, vec![k, k + 1], kappa.clone()))).collect::<Result<_>>()?,
            )
        }
        FamilyKind::Gammabar | FamilyKind::Sigma => {
            let spec = a.m_list.as_deref().ok_or_else(|| Error::Parse("this family needs --m-list".into()))?;
            let r = rational(&a.r, Rational::integer(1))?;
            let sets = parse_m_list(spec, a.dim, a.product)?
                .into_iter()
                .map(|m| {
                    let s = if a.family == FamilyKind::Gammabar { gamma_bar(&m)? } else { sigma_set(&m, r)? };
                    Ok((label(&m), s))
                })
                .collect::<Result<Vec<_>>>()?;
            Family::Sets(sets)
        }
    };
    let t = ratio_table(&family, which, &a.quad.spec(), a.grid, !a.no_refine)?;
    Ok(if json { t.to_json() + "\n" } else { t.to_csv() })
}
