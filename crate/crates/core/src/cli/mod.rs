//! The `hypmod` command line.
//!
//! Exit codes: 0 on success, 1 when a computation fails, 2 for usage errors.

pub mod config;
pub mod output;
pub mod plot;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::domains::{Annulus, Domain, FamilyKind, NormalQuad};
use crate::error::Error;
use crate::numeric::report::{verify_report, ModulusReport, VerifyOptions};
use crate::numeric::QuadratureSpec;
use crate::polar::{from_cartesian, to_cartesian, PolarPoint};
use crate::HPoint;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hypmod", version, about = "Moduli of curve families in hyperbolic quadrilaterals and annuli")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Absolute quadrature tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for the random isometry checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Foliated strip count for reports, raster size for plots.
    #[arg(long = "grid-n", global = true)]
    grid_n: Option<usize>,
    /// Flat key=value file; flags given on the command line win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report for a normal quadrilateral Q(a, b).
    Quad(QuadArgs),
    /// Report for the annulus about (1, 0) with radii r1 < r2.
    Annulus(AnnulusArgs),
    /// Run the standard report suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Option<Suite>,
    },
    /// Convert between polar and half-plane coordinates about (1, 0).
    Polar(PolarArgs),
    /// Draw a domain and its subfamily as SVG.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
struct QuadArgs {
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, value_enum)]
    family: Option<QuadFamily>,
}

#[derive(Debug, Args)]
struct AnnulusArgs {
    #[arg(long, allow_negative_numbers = true)]
    r1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    r2: Option<f64>,
    #[arg(long, value_enum)]
    family: Option<AnnulusFamily>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct PolarArgs {
    #[arg(long = "to-cartesian", num_args = 2, value_names = ["R", "THETA"], allow_negative_numbers = true)]
    to_cartesian: Option<Vec<f64>>,
    #[arg(long = "from-cartesian", num_args = 2, value_names = ["LAMBDA", "T"], allow_negative_numbers = true)]
    from_cartesian: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
struct PlotArgs {
    #[arg(long, value_enum)]
    domain: Option<DomainKind>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    r1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    r2: Option<f64>,
    /// arcs|segments for quadrilaterals, joining|separating for annuli.
    #[arg(long)]
    family: Option<String>,
    /// Add a log-scaled heatmap of the extremal density.
    #[arg(long)]
    density: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Quad,
    Annulus,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Quad => "quad",
            Suite::Annulus => "annulus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuadFamily {
    Arcs,
    Segments,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AnnulusFamily {
    Joining,
    Separating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainKind {
    Quad,
    Annulus,
}

/// What to run, after merging flags over the config file.
#[derive(Debug, Clone, PartialEq)]
pub enum CliCommand {
    Report { family: FamilyKind, domain: Domain },
    Verify { suite: Suite },
    ToCartesian { r: f64, theta: f64 },
    FromCartesian { lambda: f64, t: f64 },
    Plot { domain: Domain, family: FamilyKind, density: bool },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub command: CliCommand,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub tol: f64,
    pub seed: u64,
    pub grid_n: Option<usize>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Compute(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

/// Option lookup: command-line value, then config file.
struct Resolver<'a> {
    file: &'a BTreeMap<String, String>,
}

impl Resolver<'_> {
    fn get<T: FromStr>(&self, key: &str, flag: Option<T>) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("config value for {key} is invalid: {raw:?}"))),
        }
    }

    fn require<T: FromStr>(&self, key: &str, flag: Option<T>) -> Result<T, CliError> {
        self.get(key, flag)?
            .ok_or_else(|| CliError::Usage(format!("missing required option --{key}")))
    }

    fn value_enum<T: ValueEnum>(&self, key: &str, flag: Option<T>) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            None => Ok(None),
            Some(raw) => T::from_str(raw, true)
                .map(Some)
                .map_err(|_| CliError::Usage(format!("config value for {key} is invalid: {raw:?}"))),
        }
    }
}

fn quad_family(name: &str) -> Result<FamilyKind, CliError> {
    match name {
        "arcs" => Ok(FamilyKind::QuadArcs),
        "segments" => Ok(FamilyKind::QuadSegments),
        _ => Err(CliError::Usage(format!("quadrilateral family must be arcs or segments, got {name:?}"))),
    }
}

fn annulus_family(name: &str) -> Result<FamilyKind, CliError> {
    match name {
        "joining" => Ok(FamilyKind::AnnulusJoining),
        "separating" => Ok(FamilyKind::AnnulusSeparating),
        _ => Err(CliError::Usage(format!("annulus family must be joining or separating, got {name:?}"))),
    }
}

fn quad_domain(r: &Resolver, a: Option<f64>, b: Option<f64>) -> Result<Domain, CliError> {
    let a = r.require("a", a)?;
    let b = r.get("b", b)?.unwrap_or(1.0);
    Ok(Domain::Quad(NormalQuad::new(a, b)?))
}

fn annulus_domain(r: &Resolver, r1: Option<f64>, r2: Option<f64>) -> Result<Domain, CliError> {
    let (r1, r2) = (r.require("r1", r1)?, r.require("r2", r2)?);
    if !(r1 > 0.0 && r1 < r2) {
        return Err(Error::DegenerateAnnulus { r1, r2 }.into());
    }
    Ok(Domain::Annulus(Annulus::centered(r1, r2)?))
}

fn resolve(cli: Cli) -> Result<CliConfig, CliError> {
    let file = match &cli.common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
            config::parse_config(&text).map_err(CliError::Usage)?
        }
        None => BTreeMap::new(),
    };
    let r = Resolver { file: &file };
    let c = cli.common;
    let format = r.value_enum("format", c.format)?.unwrap_or(Format::Json);
    let out = r.get("out", c.out)?;
    let tol = r.get("tol", c.tol)?.unwrap_or(QuadratureSpec::default().abs_tol());
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    let seed = r.get("seed", c.seed)?.unwrap_or(0);
    let grid_n = r.get("grid-n", c.grid_n)?;
    if let Some(n) = grid_n {
        if n < 8 {
            return Err(CliError::Usage(format!("--grid-n must be at least 8, got {n}")));
        }
    }
    let command = match cli.command {
        Command::Quad(q) => {
            let family = match q.family {
                Some(QuadFamily::Arcs) => FamilyKind::QuadArcs,
                Some(QuadFamily::Segments) => FamilyKind::QuadSegments,
                None => quad_family(r.get::<String>("family", None)?.as_deref().unwrap_or("arcs"))?,
            };
            CliCommand::Report {
                family,
                domain: quad_domain(&r, q.a, q.b)?,
            }
        }
        Command::Annulus(an) => {
            let family = match an.family {
                Some(AnnulusFamily::Joining) => FamilyKind::AnnulusJoining,
                Some(AnnulusFamily::Separating) => FamilyKind::AnnulusSeparating,
                None => annulus_family(r.get::<String>("family", None)?.as_deref().unwrap_or("joining"))?,
            };
            CliCommand::Report {
                family,
                domain: annulus_domain(&r, an.r1, an.r2)?,
            }
        }
        Command::Verify { suite } => CliCommand::Verify {
            suite: r.value_enum("suite", suite)?.unwrap_or(Suite::All),
        },
        Command::Polar(p) => match (p.to_cartesian, p.from_cartesian) {
            (Some(v), None) => CliCommand::ToCartesian { r: v[0], theta: v[1] },
            (None, Some(v)) => CliCommand::FromCartesian { lambda: v[0], t: v[1] },
            _ => unreachable!("clap enforces exactly one conversion"),
        },
        Command::Plot(p) => {
            let kind = r
                .value_enum("domain", p.domain)?
                .ok_or_else(|| CliError::Usage("missing required option --domain".into()))?;
            let density = p.density || r.get::<bool>("density", None)?.unwrap_or(false);
            let family_name = r.get("family", p.family)?;
            let (domain, family) = match kind {
                DomainKind::Quad => (
                    quad_domain(&r, p.a, p.b)?,
                    quad_family(family_name.as_deref().unwrap_or("arcs"))?,
                ),
                DomainKind::Annulus => (
                    annulus_domain(&r, p.r1, p.r2)?,
                    annulus_family(family_name.as_deref().unwrap_or("joining"))?,
                ),
            };
            if out.is_none() {
                return Err(CliError::Usage("plot needs --out <path>".into()));
            }
            CliCommand::Plot { domain, family, density }
        }
    };
    Ok(CliConfig {
        command,
        format,
        out,
        tol,
        seed,
        grid_n,
    })
}

fn verify_options(cfg: &CliConfig) -> Result<VerifyOptions, CliError> {
    let defaults = VerifyOptions::default();
    Ok(VerifyOptions {
        spec: defaults.spec.with_tol(cfg.tol)?,
        foliated_curves: cfg.grid_n.unwrap_or(defaults.foliated_curves),
        seed: cfg.seed,
        ..defaults
    })
}

/// The reports of a suite, in a fixed order.
pub fn suite_cases(suite: Suite) -> Vec<(FamilyKind, Domain)> {
    let quad = Domain::Quad(NormalQuad::unit_height(2.0).expect("valid quadrilateral"));
    let annulus = Domain::Annulus(Annulus::centered(1.0, 2.0).expect("valid annulus"));
    let mut cases = Vec::new();
    if suite != Suite::Annulus {
        cases.push((FamilyKind::QuadArcs, quad));
        cases.push((FamilyKind::QuadSegments, quad));
    }
    if suite != Suite::Quad {
        cases.push((FamilyKind::AnnulusJoining, annulus));
        cases.push((FamilyKind::AnnulusSeparating, annulus));
    }
    cases
}

fn execute(cfg: &CliConfig) -> Result<Option<String>, CliError> {
    let text = match &cfg.command {
        CliCommand::Report { family, domain } => {
            let report = verify_report(*family, domain, &verify_options(cfg)?)?;
            match cfg.format {
                Format::Json => output::report_json(&report),
                Format::Csv => output::report_csv(&report),
            }
        }
        CliCommand::Verify { suite } => {
            let opts = verify_options(cfg)?;
            let reports = suite_cases(*suite)
                .into_iter()
                .map(|(kind, domain)| verify_report(kind, &domain, &opts))
                .collect::<Result<Vec<ModulusReport>, Error>>()?;
            match cfg.format {
                Format::Json => output::suite_json(suite.name(), cfg.seed, &reports),
                Format::Csv => output::suite_csv(&reports),
            }
        }
        CliCommand::ToCartesian { r, theta } => {
            let p = to_cartesian(&PolarPoint::new(*r, *theta)?);
            let (l, t) = (p.lambda() + 0.0, p.t() + 0.0);
            match cfg.format {
                Format::Json => format!("{{\"lambda\": {:.12}, \"t\": {:.12}}}\n", l, t),
                Format::Csv => format!("lambda,t\n{:.12},{:.12}\n", l, t),
            }
        }
        CliCommand::FromCartesian { lambda, t } => {
            let p = from_cartesian(&HPoint::new(*lambda, *t)?);
            let (r, theta) = (p.r() + 0.0, p.theta() + 0.0);
            match cfg.format {
                Format::Json => format!("{{\"r\": {:.12}, \"theta\": {:.12}}}\n", r, theta),
                Format::Csv => format!("r,theta\n{:.12},{:.12}\n", r, theta),
            }
        }
        CliCommand::Plot { domain, family, density } => {
            let req = plot::PlotRequest {
                domain: *domain,
                family: *family,
                density: *density,
                raster: cfg.grid_n.unwrap_or(plot::DEFAULT_RASTER),
            };
            let path = cfg.out.as_ref().expect("checked while resolving");
            plot::emit_plot(&req, path)?;
            return Ok(None);
        }
    };
    Ok(Some(text))
}

/// Plain-text polar output, used when no format flag is given.
fn polar_text(cmd: &CliCommand) -> Result<Option<String>, CliError> {
    Ok(match cmd {
        CliCommand::ToCartesian { r, theta } => {
            let p = to_cartesian(&PolarPoint::new(*r, *theta)?);
            let (l, t) = (p.lambda() + 0.0, p.t() + 0.0);
            Some(format!("lambda={:.12} t={:.12}\n", l, t))
        }
        CliCommand::FromCartesian { lambda, t } => {
            let p = from_cartesian(&HPoint::new(*lambda, *t)?);
            let (r, theta) = (p.r() + 0.0, p.theta() + 0.0);
            Some(format!("r={:.12} theta={:.12}\n", r, theta))
        }
        _ => None,
    })
}

/// Runs the command line with explicit output streams and returns the exit
/// code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let explicit_format = cli.common.format.is_some();
    let result = resolve(cli).and_then(|cfg| {
        let text = if explicit_format || cfg.out.is_some() {
            execute(&cfg)?
        } else {
            match polar_text(&cfg.command)? {
                Some(t) => Some(t),
                None => execute(&cfg)?,
            }
        };
        Ok((cfg, text))
    });
    match result {
        Ok((cfg, Some(text))) => {
            let written = match &cfg.out {
                Some(path) => std::fs::write(path, &text)
                    .map_err(|e| Error::IoFailure(format!("{}: {e}", path.display()))),
                None => stdout
                    .write_all(text.as_bytes())
                    .map_err(|e| Error::IoFailure(e.to_string())),
            };
            match written {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    EXIT_COMPUTE
                }
            }
        }
        Ok((_, None)) => EXIT_OK,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}\n\nUsage: hypmod <COMMAND> [OPTIONS]; see hypmod --help");
            EXIT_USAGE
        }
        Err(CliError::Compute(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_COMPUTE
        }
    }
}

/// Runs the command line on the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
