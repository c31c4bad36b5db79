//! Command-line front end for `invspec`.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code: 0 on success, 1 on usage errors, 2 when a validation check
//! fails and 3 when a numerical procedure does not converge.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use invspec::bessel::{canonical_spectrum, zeros_l_mn};
use invspec::families::{between_metric, ordered_pairs};
use invspec::format::sig;
use invspec::profiles::{
    check_hypothesis, potential_from_gamma, total_mass, validate_class_g, validate_hermitian, HermitianProfile,
    Mollifier, ProfileDocument, SymplecticProfile,
};
use invspec::sturm::{
    assemble, build_mesh, eigenvalues, invariant_spectrum_with, verify_bound_with_tol, SpectrumOptions,
    DEFAULT_BOUND_TOL,
};
use invspec::profiles::construct::DEFAULT_CLASS_G_CONSTANT;
use invspec::Error;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "INVSPEC_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "invspec", version, about = "Invariant spectra of S1-invariant metrics on the projective line")]
pub struct RunConfig {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct and validate a profile pair and print it as JSON or samples.
    Profile(ProfileArgs),
    /// Positive zeros of L_{m,n}.
    BesselZeros {
        m: u32,
        #[arg(allow_negative_numbers = true)]
        n: i32,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// Spectrum of the canonical pair from Bessel zeros.
    CanonicalSpectrum {
        m: u32,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        /// Keep only invariant eigenvalues.
        #[arg(long)]
        invariant_only: bool,
    },
    /// Finite-element invariant spectrum.
    Solve {
        #[command(flatten)]
        pair: PairArgs,
        /// Number of nonzero eigenvalues.
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[command(flatten)]
        ladder: LadderArgs,
    },
    /// Hypothesis check and eigenvalue bound report.
    Verify {
        #[command(flatten)]
        pair: PairArgs,
        /// Highest index j compared with its bound.
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        jmax: u64,
        /// Slack allowed above each bound.
        #[arg(long, default_value_t = DEFAULT_BOUND_TOL)]
        bound_tol: f64,
        #[command(flatten)]
        ladder: LadderArgs,
    },
    /// Discrete monotonicity check on seeded ordered profile pairs.
    MonotonicitySweep {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of pairs.
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        pairs: u64,
        /// Mesh size (even, at least 16).
        #[arg(long, default_value_t = 256)]
        n: usize,
        /// Allowed excess of μ_j(1) over μ_j(2).
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

/// Profile source: a builtin name or a JSON file.
#[derive(Debug, Clone, Args)]
pub struct GammaArgs {
    /// fubini-study, canonical, bump, mixture, or a JSON profile path.
    #[arg(long)]
    pub gamma: String,
    /// Bump amplitude scale.
    #[arg(long = "A", default_value_t = 1.0)]
    pub amplitude: f64,
    #[arg(long, default_value_t = Mollifier::standard().center)]
    pub bump_center: f64,
    #[arg(long, default_value_t = Mollifier::standard().half_width)]
    pub bump_half_width: f64,
    #[arg(long, default_value_t = Mollifier::standard().height)]
    pub bump_height: f64,
    /// Mixture weight of the Fubini-Study profile.
    #[arg(long)]
    pub epsilon: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct HermitianArgs {
    /// constant, canonical, between, or a JSON profile path.
    #[arg(long = "h")]
    pub h: String,
    /// Degree of the line bundle.
    #[arg(long, default_value_t = 0)]
    pub m: u32,
    /// Value of a constant hermitian profile.
    #[arg(long, default_value_t = 1.0)]
    pub h_value: f64,
    /// Interpolation weight of the `between` metric.
    #[arg(long, default_value_t = 0.5)]
    pub theta: f64,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    #[command(flatten)]
    pub gamma: GammaArgs,
    #[command(flatten)]
    pub h: HermitianArgs,
}

#[derive(Debug, Clone, Args)]
pub struct LadderArgs {
    /// Target relative change of successive extrapolants.
    #[arg(long, default_value_t = SpectrumOptions::default().target_tol)]
    pub tol: f64,
    #[arg(long, default_value_t = SpectrumOptions::default().n_start)]
    pub n_start: usize,
    #[arg(long, default_value_t = SpectrumOptions::default().n_max)]
    pub n_max: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub gamma: GammaArgs,
    /// Optional hermitian profile: constant, canonical, between, or a path.
    #[arg(long = "h")]
    pub h: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub m: u32,
    #[arg(long, default_value_t = 1.0)]
    pub h_value: f64,
    #[arg(long, default_value_t = 0.5)]
    pub theta: f64,
    /// Fail with exit code 2 if a validation check fails.
    #[arg(long)]
    pub validate: bool,
    /// Build the potential and report its normalization.
    #[arg(long)]
    pub construct: bool,
    /// Constant of the class-G endpoint test.
    #[arg(long, default_value_t = DEFAULT_CLASS_G_CONSTANT)]
    pub class_g_constant: f64,
    /// Number of sample intervals in CSV output.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}

/// Failure of a subcommand, mapped to an exit code by [`run`].
#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = std::result::Result<Output, Failure>;

/// Rendered output plus an optional validation failure that should still
/// produce the report.
struct Output {
    text: String,
    rejected: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, rejected: None }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

/// Pretty JSON in declaration order of the struct fields.
fn struct_text<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types always serialize");
    s.push('\n');
    s
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types always serialize")
}

/// Reads a profile document from `path`. Files written by `profile` are
/// accepted too; `key` picks their `gamma` or `h` entry.
fn load_document(path: &Path, key: &str) -> std::result::Result<ProfileDocument, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read `{}`: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(Error::from)?;
    let doc = match value.get(key) {
        Some(inner) if value.get("kind").is_none() => inner.clone(),
        _ => value,
    };
    Ok(serde_json::from_value(doc).map_err(Error::from)?)
}

fn gamma_from_args(a: &GammaArgs) -> std::result::Result<SymplecticProfile, Failure> {
    let doc = match a.gamma.as_str() {
        "fubini-study" | "canonical" => ProfileDocument::new(a.gamma.as_str()),
        "bump" => ProfileDocument::new("bump")
            .with_param("A", a.amplitude)
            .with_param("center", a.bump_center)
            .with_param("half_width", a.bump_half_width)
            .with_param("height", a.bump_height),
        "mixture" => {
            let eps = a
                .epsilon
                .ok_or_else(|| Failure::Usage("`--gamma mixture` needs `--epsilon`".into()))?;
            ProfileDocument::new("mixture").with_param("epsilon", eps)
        }
        path => load_document(Path::new(path), "gamma")?,
    };
    Ok(doc.to_gamma()?)
}

fn hermitian_from(
    source: &str,
    m: u32,
    value: f64,
    theta: f64,
    gamma: &SymplecticProfile,
) -> std::result::Result<HermitianProfile, Failure> {
    let h = match source {
        "constant" => {
            if m != 0 {
                return Err(Failure::Usage("`--h constant` requires `--m 0`".into()));
            }
            HermitianProfile::constant(value)?
        }
        "canonical" => HermitianProfile::canonical(m),
        "between" => {
            if !(0.0..=1.0).contains(&theta) {
                return Err(Failure::Usage("`--theta` must lie in [0, 1]".into()));
            }
            between_metric(gamma, m, theta)
        }
        path => {
            let mut doc = load_document(Path::new(path), "h")?;
            match doc.m {
                Some(dm) if dm != m => {
                    return Err(Failure::Usage(format!("profile file has m = {dm} but `--m {m}` was given")))
                }
                _ => doc.m = Some(m),
            }
            doc.to_hermitian()?
        }
    };
    Ok(h)
}

fn pair_from_args(p: &PairArgs) -> std::result::Result<(SymplecticProfile, HermitianProfile), Failure> {
    let gamma = gamma_from_args(&p.gamma)?;
    let h = hermitian_from(&p.h.h, p.h.m, p.h.h_value, p.h.theta, &gamma)?;
    Ok((gamma, h))
}

fn options(count: usize, l: &LadderArgs) -> SpectrumOptions {
    SpectrumOptions {
        count,
        target_tol: l.tol,
        n_start: l.n_start,
        n_max: l.n_max,
        ..SpectrumOptions::default()
    }
}

fn profile(a: &ProfileArgs, format: Format) -> Outcome {
    let gamma = gamma_from_args(&a.gamma)?;
    let h = a
        .h
        .as_deref()
        .map(|src| hermitian_from(src, a.m, a.h_value, a.theta, &gamma))
        .transpose()?;
    let class_g = validate_class_g(&gamma, a.class_g_constant, invspec::profiles::validate::DEFAULT_LADDER);
    let hermitian = h.as_ref().map(validate_hermitian);
    let mut failures = class_g.failures.clone();
    if let Some(r) = &hermitian {
        failures.extend(r.failures.iter().cloned());
    }
    let normalization = if a.construct && class_g.passed {
        let f = potential_from_gamma(&gamma)?;
        Some(json!({ "slope_gap": f.measured_slope_gap(), "total_mass": total_mass(&f) }))
    } else {
        None
    };
    let passed = failures.is_empty();
    let text = match format {
        Format::Json => {
            let h_doc = match &h {
                Some(h) => Some(to_value(&ProfileDocument::from_hermitian(h)?)),
                None => None,
            };
            json_text(&json!({
                "gamma": to_value(&ProfileDocument::from_gamma(&gamma)?),
                "h": h_doc,
                "class_g": to_value(&class_g),
                "hermitian": hermitian.as_ref().map(to_value),
                "normalization": normalization,
                "passed": passed,
            }))
        }
        Format::Csv => {
            let n = a.samples.max(1);
            let mut s = String::from(if h.is_some() { "x,gamma,h\n" } else { "x,gamma\n" });
            for i in 0..=n {
                let x = i as f64 / n as f64;
                let _ = write!(s, "{},{}", sig(x, 15), sig(gamma.eval(x), 15));
                if let Some(h) = &h {
                    let _ = write!(s, ",{}", sig(h.eval(x), 15));
                }
                s.push('\n');
            }
            s
        }
    };
    let rejected = (a.validate && !passed).then(|| failures.join("; "));
    Ok(Output { text, rejected })
}

fn solve(pair: &PairArgs, count: usize, ladder: &LadderArgs, format: Format) -> Outcome {
    let (gamma, h) = pair_from_args(pair)?;
    let result = invariant_spectrum_with(&gamma, &h, &options(count, ladder))?;
    Ok(Output::ok(match format {
        Format::Csv => result.to_csv(),
        Format::Json => struct_text(&result),
    }))
}

fn verify(pair: &PairArgs, jmax: usize, bound_tol: f64, ladder: &LadderArgs, format: Format) -> Outcome {
    let (gamma, h) = pair_from_args(pair)?;
    let m = pair.h.m;
    let hypothesis = check_hypothesis(&gamma, &h, m);
    let spectrum = invariant_spectrum_with(&gamma, &h, &options(jmax, ladder))?;
    let bound = verify_bound_with_tol(&spectrum, m, jmax, bound_tol)?;
    let mut problems = Vec::new();
    if !hypothesis.passed() {
        problems.push(format!(
            "hypothesis fails (lower margin {:e} at x = {}, upper margin {:e} at x = {})",
            hypothesis.worst_margin_lower,
            hypothesis.worst_margin_lower_at,
            hypothesis.worst_margin_upper,
            hypothesis.worst_margin_upper_at
        ));
    }
    for r in bound.records.iter().filter(|r| !r.ok) {
        problems.push(format!("bound violated at j = {} (gap {:e})", r.j, r.gap));
    }
    let text = match format {
        Format::Json => json_text(&json!({
            "hypothesis": to_value(&hypothesis),
            "bound": to_value(&bound),
            "spectrum": to_value(&spectrum),
            "passed": problems.is_empty(),
        })),
        Format::Csv => {
            let mut s = String::from("j,lambda,bound,gap,ok,error_estimate\n");
            for r in &bound.records {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    r.j,
                    sig(r.lambda, 15),
                    sig(r.bound, 15),
                    sig(r.gap, 15),
                    r.ok,
                    sig(r.error_estimate, 15)
                );
            }
            s
        }
    };
    Ok(Output {
        text,
        rejected: (!problems.is_empty()).then(|| problems.join("; ")),
    })
}

fn monotonicity_sweep(seed: u64, pairs: usize, n: usize, tol: f64, format: Format) -> Outcome {
    let mesh = build_mesh(n, 2.0)?;
    let mut rows = Vec::with_capacity(pairs);
    for (i, pair) in ordered_pairs(seed, pairs).iter().enumerate() {
        let lower = assemble(&pair.lower.0, &pair.lower.1, &mesh)?;
        let upper = assemble(&pair.upper.0, &pair.upper.1, &mesh)?;
        let mu1 = eigenvalues(&lower, n + 1)?;
        let mu2 = eigenvalues(&upper, n + 1)?;
        let (worst_j, excess) = mu1
            .iter()
            .zip(&mu2)
            .map(|(a, b)| a - b)
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (j, d)| if d > acc.1 { (j, d) } else { acc });
        rows.push((i, pair.m, worst_j, excess, excess <= tol));
    }
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.4)
        .map(|r| format!("pair {} exceeds by {:e} at j = {}", r.0, r.3, r.2))
        .collect();
    let text = match format {
        Format::Csv => {
            let mut s = String::from("pair,m,worst_j,max_excess,ok\n");
            for (i, m, j, e, ok) in &rows {
                let _ = writeln!(s, "{i},{m},{j},{},{ok}", sig(*e, 15));
            }
            s
        }
        Format::Json => json_text(&json!({
            "seed": seed,
            "n": n,
            "tolerance": tol,
            "pairs": rows.iter().map(|(i, m, j, e, ok)| json!({
                "pair": i, "m": m, "worst_j": j, "max_excess": e, "ok": ok,
            })).collect::<Vec<_>>(),
            "passed": bad.is_empty(),
        })),
    };
    Ok(Output {
        text,
        rejected: (!bad.is_empty()).then(|| bad.join("; ")),
    })
}

fn execute(cfg: &RunConfig) -> Outcome {
    let format = cfg.format;
    match &cfg.command {
        Command::Profile(a) => profile(a, format),
        Command::BesselZeros { m, n, count } => {
            let ladder = zeros_l_mn(*m, *n, *count as usize)?;
            Ok(Output::ok(match format {
                Format::Csv => ladder.to_csv(),
                Format::Json => struct_text(&ladder),
            }))
        }
        Command::CanonicalSpectrum {
            m,
            count,
            invariant_only,
        } => {
            let result = canonical_spectrum(*m, *count as usize, *invariant_only)?;
            Ok(Output::ok(match format {
                Format::Csv => result.to_csv(),
                Format::Json => struct_text(&result),
            }))
        }
        Command::Solve { pair, count, ladder } => solve(pair, *count as usize, ladder, format),
        Command::Verify {
            pair,
            jmax,
            bound_tol,
            ladder,
        } => verify(pair, *jmax as usize, *bound_tol, ladder, format),
        Command::MonotonicitySweep { seed, pairs, n, tol } => {
            monotonicity_sweep(*seed, *pairs as usize, *n, *tol, format)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_VALIDATION
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                if !text.contains("Usage:") {
                    let _ = writeln!(err, "\n{}", RunConfig::synopsis());
                }
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let output = match execute(&cfg) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\n{}", RunConfig::synopsis());
            return EXIT_USAGE;
        }
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &cfg.output {
        Some(path) => std::fs::write(path, &output.text)
            .map_err(|e| format!("cannot write `{}`: {e}", path.display())),
        None => out.write_all(output.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(err, "error: {msg}");
        return EXIT_USAGE;
    }
    match output.rejected {
        Some(msg) => {
            let _ = writeln!(err, "validation failed: {msg}");
            EXIT_VALIDATION
        }
        None => EXIT_OK,
    }
}

impl RunConfig {
    fn synopsis() -> String {
        use clap::CommandFactory;
        RunConfig::command().render_usage().to_string()
    }
}

/// Sizes the global thread pool from [`THREADS_ENV`] if it is set.
pub fn configure_threads() -> std::result::Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t >= 1)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}
