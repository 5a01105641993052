//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mwf_core::num_complex::Complex64;
use mwf_core::oracle::{self, OracleConfig};
use mwf_core::{cg, dl, scattering, spherical, twisted};
use mwf_core::{AlgebraElement, Coweight, Error, MetaplecticData, RationalElement, RootSystem};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{batch, families, render};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "MWF_THREADS";

#[derive(Parser, Debug)]
#[command(name = "mwf", version, about = "Metaplectic Whittaker functions: compute, verify, and oracle checks")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub output: OutputFormat,
    /// Run every job listed in a JSON file.
    #[arg(long, value_name = "FILE")]
    pub jobs: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute a Whittaker or spherical function.
    Compute {
        #[command(subcommand)]
        what: ComputeCmd,
    },
    /// Check an identity over a range of parameters.
    Verify(VerifyArgs),
    /// Numeric residue-field computations.
    Oracle {
        #[command(subcommand)]
        what: OracleCmd,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SystemArgs {
    /// Cartan type label such as A2, B2 or G2.
    #[arg(long)]
    pub cartan: String,
    /// Cover degree.
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Value of the quadratic form on a short coroot.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub kappa: i64,
}

#[derive(Args, Debug, Clone)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub sys: SystemArgs,
    /// Coweight in simple-coroot coordinates, e.g. 1,2.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Residue field size for numeric specialization.
    #[arg(long)]
    pub q: Option<f64>,
    /// Prime for the numeric Gauss sums (defaults to q).
    #[arg(long)]
    pub p: Option<u64>,
    /// Also report each T_w(e^λ).
    #[arg(long)]
    pub per_w: bool,
}

#[derive(Subcommand, Debug)]
pub enum ComputeCmd {
    Whittaker(ComputeArgs),
    Spherical(ComputeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    CgBraid,
    DlBraid,
    Symmetrizer,
    Cs,
    Fg,
    Macdonald,
    Hecke,
    Spherical,
    Intertwiner,
    Tau,
    Scattering,
    Involution,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    pub target: VerifyTarget,
    #[command(flatten)]
    pub sys: SystemArgs,
    /// Half-width of the coweight box.
    #[arg(long = "box")]
    pub box_radius: Option<i32>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub p: Option<u64>,
    /// Series cutoff in steps of n(a)a.
    #[arg(long)]
    pub cutoff: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of random families for the scattering check.
    #[arg(long)]
    pub families: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum OracleCmd {
    Gauss {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
    },
    Rank1 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        kappa: i64,
        /// The pairing ⟨λ,a⟩.
        #[arg(long)]
        pairing: i64,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: String) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: msg }
    }
}

pub(crate) enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// Worker count from the environment, defaulting to the available parallelism.
pub fn thread_count() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(thread_count()).build() {
        Ok(p) => p,
        Err(e) => return Outcome::usage(format!("cannot start worker threads: {e}\n")),
    };
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    pool.install(|| run_in_pool(argv))
}

pub(crate) fn run_in_pool<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let result = match (&cli.jobs, &cli.command) {
        (Some(path), None) => batch::run_file(path),
        (None, Some(cmd)) => dispatch(cmd),
        (Some(_), Some(_)) => Err(Failure::Usage("--jobs cannot be combined with a subcommand".into())),
        (None, None) => Err(Failure::Usage("a subcommand or --jobs is required; see --help".into())),
    };
    match result {
        Ok((ok, value)) => Outcome {
            code: if ok { EXIT_OK } else { EXIT_FAILED },
            stdout: format_output(&value, cli.output),
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome::usage(format!("error: {msg}\n")),
        Err(Failure::Core(e)) => {
            let code = if is_config_error(&e) { EXIT_USAGE } else { EXIT_FAILED };
            Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

fn is_config_error(e: &Error) -> bool {
    !matches!(e, Error::Internal(_) | Error::Inexpansible(_) | Error::ZeroDenominator)
}

pub fn format_output(v: &Value, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => serde_json::to_string_pretty(v).expect("serializable") + "\n",
        OutputFormat::Text => render::text(v),
    }
}

fn dispatch(cmd: &Command) -> Res<(bool, Value)> {
    match cmd {
        Command::Compute { what: ComputeCmd::Whittaker(a) } => compute_whittaker(a),
        Command::Compute { what: ComputeCmd::Spherical(a) } => compute_spherical(a),
        Command::Verify(a) => verify(a),
        Command::Oracle { what } => run_oracle(what),
    }
}

fn params(sys: Option<&SystemArgs>, q: Option<f64>, lambda: Option<&str>, seed: Option<u64>) -> Value {
    json!({
        "cartan": sys.map(|s| s.cartan.clone()),
        "n": sys.map(|s| s.n),
        "kappa": sys.map(|s| s.kappa),
        "q": q,
        "lambda": lambda,
        "seed": seed,
    })
}

fn metaplectic(sys: &SystemArgs) -> Res<MetaplecticData> {
    Ok(MetaplecticData::new(RootSystem::from_label(&sys.cartan)?, sys.n, sys.kappa)?)
}

pub(crate) fn parse_lambda(s: &str, rank: usize) -> Res<Coweight> {
    let coords: Vec<i32> = s
        .split(',')
        .map(|t| t.trim().parse::<i32>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("cannot parse coweight '{s}'")))?;
    if coords.len() != rank {
        return Err(Error::RankMismatch { expected: rank, got: coords.len() }.into());
    }
    Ok(Coweight::new(&coords))
}

/// Smallest prime `p ≥ 7` with `p ≡ 1 mod 2n`.
pub fn default_prime(n: u32) -> u64 {
    (7..).find(|&p| OracleConfig::new(p, n, 1).is_ok()).expect("primes in progressions")
}

/// Gauss table for the prime `p`, or `q` read as a prime.
fn gauss_table(n: u32, p: Option<u64>, q: Option<f64>) -> Res<Vec<Complex64>> {
    let p = p
        .or_else(|| q.filter(|q| q.fract() == 0.0 && *q > 0.0).map(|q| q as u64))
        .ok_or_else(|| Failure::Usage("numeric Gauss sums need --p or an integral --q".into()))?;
    Ok(oracle::gauss_numeric(&OracleConfig::new(p, n, 1)?).values)
}

fn numeric_value(f: &AlgebraElement, n: u32, q: f64, p: Option<u64>) -> Value {
    let table = gauss_table(n, p, Some(q)).ok();
    match f.specialize(q, table.as_deref()) {
        Ok(t) => render::numeric(&t),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn compute_whittaker(a: &ComputeArgs) -> Res<(bool, Value)> {
    let md = metaplectic(&a.sys)?;
    let lambda = parse_lambda(&a.lambda, md.rank())?;
    let w = dl::whittaker_full(&md, &lambda, a.per_w)?;
    let rs = md.root_system();
    let mut result = json!({
        "dominant": w.dominant,
        "nondominant": !w.dominant,
        "rho_pairing": w.rho_pairing,
        "value": render::element(&w.value),
        "t_sum": render::element(&w.t_sum),
        "closed_form": render::fraction(&w.closed_form),
        "equal": w.equal,
    });
    if let Some(q) = a.q {
        result["numeric"] = numeric_value(&w.value, md.n(), q, a.p);
    }
    if a.per_w {
        result["per_w"] = Value::Array(
            w.per_w
                .iter()
                .map(|(id, t)| json!({ "word": rs.element(*id).reduced_word, "t_w": render::element(t) }))
                .collect(),
        );
    }
    let out = json!({
        "command": "compute whittaker",
        "params": params(Some(&a.sys), a.q, Some(&a.lambda), None),
        "result": result,
        "ok": w.equal,
    });
    Ok((w.equal, out))
}

fn compute_spherical(a: &ComputeArgs) -> Res<(bool, Value)> {
    let md = metaplectic(&a.sys)?;
    let lambda = parse_lambda(&a.lambda, md.rank())?;
    let s = spherical::spherical_function(&md, &lambda)?;
    let mut result = json!({
        "dominant": true,
        "rho_pairing": s.rho_pairing,
        "value": render::fraction(&s.value),
        "polynomial": s.polynomial.as_ref().map(render::element),
        "gamma_route": render::fraction(&s.gamma_route),
        "equal": s.equal,
    });
    if let Some(q) = a.q {
        result["numeric"] = match &s.polynomial {
            Some(p) => numeric_value(p, md.n(), q, a.p),
            None => json!({ "error": "value is not a polynomial" }),
        };
    }
    let out = json!({
        "command": "compute spherical",
        "params": params(Some(&a.sys), a.q, Some(&a.lambda), None),
        "result": result,
        "ok": s.equal,
    });
    Ok((s.equal, out))
}

fn points_json(pts: &[Coweight]) -> Value {
    Value::Array(pts.iter().map(render::coweight).collect())
}

/// Dominant coweights with coordinates in `0..=r`.
fn dominant_box(md: &MetaplecticData, r: i32) -> Vec<Coweight> {
    cg::lambda_box(md.rank(), r)
        .into_iter()
        .filter(|x| x.is_nonnegative() && md.root_system().is_dominant(x))
        .collect()
}

/// Runs `check` on every point in parallel, in input order.
fn sweep<F>(pts: &[Coweight], check: F) -> Res<Vec<Coweight>>
where
    F: Fn(&Coweight) -> mwf_core::Result<bool> + Sync,
{
    let results: Vec<mwf_core::Result<bool>> = pts.par_iter().map(&check).collect();
    let mut failures = Vec::new();
    for (x, r) in pts.iter().zip(results) {
        if !r? {
            failures.push(*x);
        }
    }
    Ok(failures)
}

fn verify(a: &VerifyArgs) -> Res<(bool, Value)> {
    let md = metaplectic(&a.sys)?;
    let (identity, ok, details) = match a.target {
        VerifyTarget::CgBraid => braid(&md, a, cg::braid_cg_at, "cg-braid")?,
        VerifyTarget::DlBraid => {
            let (id, ok, mut d) = braid(&md, a, dl::dl_braid_at, "dl-braid")?;
            let r = a.box_radius.unwrap_or(2);
            let pts = dominant_box(&md, r);
            let bad = sweep(&pts, |x| dl::reduced_words_agree(&md, x))?;
            d["reduced_word_points"] = json!(pts.len());
            d["reduced_word_failures"] = points_json(&bad);
            (id, ok && bad.is_empty(), d)
        }
        VerifyTarget::Symmetrizer => {
            let pts = dominant_box(&md, a.box_radius.unwrap_or(2));
            let bad = sweep(&pts, |x| Ok(dl::poly_equals(&dl::symmetrizer(&md, x)?, &dl::cs_rhs(&md, x)?)))?;
            ("symmetrizer", bad.is_empty(), json!({ "cases": pts.len(), "failures": points_json(&bad) }))
        }
        VerifyTarget::Cs => {
            let pts = cg::lambda_box(md.rank(), a.box_radius.unwrap_or(1));
            let bad = sweep(&pts, |x| {
                let w = dl::whittaker_full(&md, x, false)?;
                Ok(if w.dominant { w.equal } else { w.value.is_zero() })
            })?;
            ("casselman-shalika", bad.is_empty(), json!({ "cases": pts.len(), "failures": points_json(&bad) }))
        }
        VerifyTarget::Fg => {
            let met = twisted::verify_fg(&md, true)?;
            let classical = twisted::verify_fg(&md, false)?;
            let rep = |r: &twisted::FgReport| {
                json!({
                    "m": r.m,
                    "compared": r.compared,
                    "mismatches": r.mismatches.iter().map(|y| y.to_string()).collect::<Vec<_>>(),
                    "top_ok": r.top_ok,
                    "ok": r.ok(),
                })
            };
            let ok = met.ok() && classical.ok();
            ("fg", ok, json!({ "metaplectic": rep(&met), "non_metaplectic": rep(&classical) }))
        }
        VerifyTarget::Macdonald => {
            let r = spherical::verify_macdonald(&md)?;
            ("zero-case", r.ok(), json!({ "sum_ok": r.sum_ok, "symmetrizer_ok": r.symmetrizer_ok }))
        }
        VerifyTarget::Hecke => {
            let pts = cg::lambda_box(md.rank(), a.box_radius.unwrap_or(2));
            let bad = sweep(&pts, |x| {
                (0..md.rank()).try_fold(true, |acc, i| Ok(acc && spherical::hecke_at(&md, i, x)?))
            })?;
            let quad = sweep(&pts, |x| {
                (0..md.rank()).try_fold(true, |acc, i| Ok(acc && dl::quadratic_relation_at(&md, i, x)?))
            })?;
            let details = json!({
                "cases": pts.len(),
                "failures": points_json(&bad),
                "metaplectic_quadratic_failures": points_json(&quad),
            });
            ("hecke", bad.is_empty(), details)
        }
        VerifyTarget::Spherical => {
            let pts = dominant_box(&md, a.box_radius.unwrap_or(2));
            let bad = sweep(&pts, |x| {
                let s = spherical::spherical_function(&md, x)?;
                let zero_ok = !x.is_zero() || s.polynomial.as_ref().is_some_and(|p| p.is_one());
                Ok(s.equal
                    && zero_ok
                    && spherical::stabilizer_at(&md, x)?
                    && spherical::coset_collapse_at(&md, x)?)
            })?;
            ("spherical", bad.is_empty(), json!({ "cases": pts.len(), "failures": points_json(&bad) }))
        }
        VerifyTarget::Intertwiner => intertwiner(&md, a)?,
        VerifyTarget::Tau => {
            let pts = cg::lambda_box(md.rank(), a.box_radius.unwrap_or(3));
            let bad = sweep(&pts, |x| {
                (0..md.rank()).try_fold(true, |acc, i| Ok(acc && scattering::verify_mcnamara_match(&md, i, x)?))
            })?;
            let ceiling = (0..md.rank()).all(|i| scattering::ceiling_identity(md.n_simple(i), 20));
            let details = json!({ "cases": pts.len(), "failures": points_json(&bad), "ceiling_identity": ceiling });
            ("tau", bad.is_empty() && ceiling, details)
        }
        VerifyTarget::Scattering => scattering_families(&md, a)?,
        VerifyTarget::Involution => {
            let pts = cg::lambda_box(md.rank(), a.box_radius.unwrap_or(2));
            let hs: Vec<AlgebraElement> = md
                .lambda0_basis()
                .iter()
                .map(|x| AlgebraElement::exp(*x, md.n()))
                .collect();
            let bad = sweep(&pts, |x| {
                let f = RationalElement::from_poly(AlgebraElement::exp(*x, md.n()));
                for i in 0..md.rank() {
                    if !cg::cg_word(&md, &[i as u8, i as u8], &f)?.rat_equal(&f) {
                        return Ok(false);
                    }
                    for h in &hs {
                        if !cg::verify_h_linearity(&md, i, h, &f)? {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            })?;
            ("involution", bad.is_empty(), json!({ "cases": pts.len(), "failures": points_json(&bad) }))
        }
    };
    let name = a.target.to_possible_value().expect("named").get_name().to_string();
    let out = json!({
        "command": format!("verify {name}"),
        "identity": identity,
        "params": params(Some(&a.sys), a.q, None, a.seed),
        "details": details,
        "ok": ok,
    });
    Ok((ok, out))
}

fn braid(
    md: &MetaplecticData,
    a: &VerifyArgs,
    check: fn(&MetaplecticData, &Coweight) -> mwf_core::Result<bool>,
    identity: &'static str,
) -> Res<(&'static str, bool, Value)> {
    if md.rank() != 2 {
        return Err(Failure::Usage("braid checks need a rank-two system".into()));
    }
    let default = if cg::braid_order(md, 0, 1) == 6 { 1 } else { 2 };
    let pts = cg::lambda_box(2, a.box_radius.unwrap_or(default));
    let bad = sweep(&pts, |x| check(md, x))?;
    let details = json!({ "m": cg::braid_order(md, 0, 1), "cases": pts.len(), "failures": points_json(&bad) });
    Ok((identity, bad.is_empty(), details))
}

fn numeric_setup(md: &MetaplecticData, a: &VerifyArgs) -> Res<(f64, Vec<Complex64>)> {
    let p = a.p.or(a.q.map(|q| q as u64)).unwrap_or_else(|| default_prime(md.n()));
    let q = a.q.unwrap_or(p as f64);
    Ok((q, gauss_table(md.n(), Some(p), None)?))
}

fn intertwiner(md: &MetaplecticData, a: &VerifyArgs) -> Res<(&'static str, bool, Value)> {
    let (q, table) = numeric_setup(md, a)?;
    let cutoff = a.cutoff.unwrap_or(6);
    let pts = cg::lambda_box(md.rank(), a.box_radius.unwrap_or(2));
    let reports: Vec<mwf_core::Result<Vec<scattering::NumericReport>>> = pts
        .par_iter()
        .map(|x| (0..md.rank()).map(|i| scattering::verify_intertwiner(md, i, x, cutoff, q, &table)).collect())
        .collect();
    let mut max = 0.0f64;
    let mut bad = Vec::new();
    for (x, r) in pts.iter().zip(reports) {
        for rep in r? {
            max = max.max(rep.max_residual());
            if !rep.ok() {
                bad.push(*x);
            }
        }
    }
    bad.dedup();
    let details = json!({
        "cases": pts.len(),
        "cutoff": cutoff,
        "q": q,
        "max_residual": max,
        "tolerance": scattering::TOLERANCE,
        "failures": points_json(&bad),
    });
    Ok(("intertwiner", bad.is_empty(), details))
}

fn scattering_families(md: &MetaplecticData, a: &VerifyArgs) -> Res<(&'static str, bool, Value)> {
    let (q, table) = numeric_setup(md, a)?;
    let r = a.box_radius.unwrap_or(2);
    let seed = a.seed.unwrap_or(0);
    let count = a.families.unwrap_or(100);
    let cutoff = a.cutoff.unwrap_or(8 * r as u32 + 12);
    let fams = families::random_families(seed, count, 4, md.rank(), r, md.n());
    let window = cg::lambda_box(md.rank(), r);
    let reports: Vec<mwf_core::Result<Vec<f64>>> = fams
        .par_iter()
        .map(|f| {
            (0..md.rank())
                .map(|i| {
                    scattering::verify_scattering_relation(md, i, f, &window, cutoff, q, &table)
                        .map(|rep| rep.max_residual())
                })
                .collect()
        })
        .collect();
    let mut max = 0.0f64;
    let mut failed = Vec::new();
    for (k, r) in reports.into_iter().enumerate() {
        let worst = r?.into_iter().fold(0.0, f64::max);
        max = max.max(worst);
        if worst > scattering::TOLERANCE {
            failed.push(k);
        }
    }
    let details = json!({
        "families": count,
        "window_points": window.len(),
        "cutoff": cutoff,
        "q": q,
        "max_residual": max,
        "tolerance": scattering::TOLERANCE,
        "failed_families": failed,
    });
    Ok(("scattering", failed.is_empty(), details))
}

fn run_oracle(cmd: &OracleCmd) -> Res<(bool, Value)> {
    match *cmd {
        OracleCmd::Gauss { p, n } => {
            let cfg = OracleConfig::new(p, n, 1)?;
            let t = oracle::gauss_numeric(&cfg);
            let g0_ok = (t.get(0) + 1.0).norm() < 1e-10;
            let products_ok = (1..n as i64).all(|k| (t.get(k) * t.get(-k) - p as f64).norm() < oracle::TOLERANCE);
            let ok = g0_ok && products_ok;
            let out = json!({
                "command": "oracle gauss",
                "params": params(None, Some(p as f64), None, None),
                "p": p,
                "n": n,
                "primitive_root": cfg.primitive_root,
                "g0": render::complex(t.get(0)),
                "values": t.values.iter().map(|z| render::complex(*z)).collect::<Vec<_>>(),
                "relations_ok": ok,
                "ok": ok,
            });
            Ok((ok, out))
        }
        OracleCmd::Rank1 { p, n, kappa, pairing } => {
            let cfg = OracleConfig::new(p, n, kappa)?;
            let o = oracle::calibrate()?;
            let t = oracle::gauss_numeric(&cfg);
            let coeffs = oracle::rank1_whittaker_oracle(&cfg, o, pairing)?;
            let mut max = 0.0f64;
            let rows: Vec<Value> = coeffs
                .iter()
                .map(|&(k, z)| {
                    let e = if k == 0 { Complex64::new(1.0, 0.0) } else { oracle::expected_integral(&cfg, &t, pairing, k) };
                    max = max.max((z - e).norm());
                    json!({ "k": k, "value": render::complex(z), "expected": render::complex(e) })
                })
                .collect();
            let ok = max < oracle::TOLERANCE;
            let out = json!({
                "command": "oracle rank1",
                "params": params(None, Some(p as f64), None, None),
                "p": p,
                "n": n,
                "kappa": kappa,
                "pairing": pairing,
                "orientation": { "s": o.s, "t": o.t, "calibrated": true },
                "coefficients": rows,
                "max_residual": max,
                "ok": ok,
            });
            Ok((ok, out))
        }
    }
}
