//! Command-line definitions and config-file merging.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qzeta::qzeta::Strategy;
use qzeta::Complex64;

use crate::output::Format;
use crate::parse::{self, CharArg, FloatList, OriginArg, ScheduleArg};

#[derive(Debug, Parser)]
#[command(name = "qzeta", version, about = "Evaluate q-analogue zeta functions, certify parameters and track zeros")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one member of the family at one point.
    #[command(args_override_self = true)]
    Eval(EvalArgs),
    /// Choose Euler-Maclaurin parameters meeting a remainder target, or check given ones.
    #[command(args_override_self = true)]
    Certify(CertifyArgs),
    /// Locate one zero by bisection on the real axis or Newton from a guess.
    #[command(args_override_self = true)]
    Zero(ZeroArgs),
    /// Continue a zero from q = 1 along a decreasing q schedule.
    #[command(args_override_self = true)]
    Trajectory(TrajectoryArgs),
    /// Tabulate log10|zeta| on a grid, or list sign-change cells with refined zeros.
    #[command(args_override_self = true)]
    Scan(ScanArgs),
    /// Value at q = 0 inside the crystal strips.
    #[command(args_override_self = true)]
    Crystal(CrystalArgs),
    /// Closed-form value at a non-positive integer.
    #[command(args_override_self = true)]
    Special(SpecialArgs),
    /// Distance to the classical function along a list of q values.
    #[command(args_override_self = true, name = "compare-classical")]
    CompareClassical(CompareArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Plain-text `key=value` file; flags on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Also write the report to this file.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// `zeta_q^{(nu)}(s)`.
    Zeta,
    /// `L_q^{(nu)}(s, chi)` with `--nu`, or `L_q^{mu}(s, chi)` with `--mu`.
    #[value(name = "L", alias = "l")]
    L,
    /// `f_q(s, t, chi)`.
    F,
    /// `g_q(s, t, a)`.
    G,
    /// `zeta_q^{mu}(s, a)`.
    Tsumura,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Zeta => "zeta",
            Kind::L => "L",
            Kind::F => "f",
            Kind::G => "g",
            Kind::Tsumura => "tsumura",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Direct,
    Expansion,
    #[value(alias = "euler-maclaurin")]
    Em,
}

impl StrategyArg {
    pub fn strategy(self) -> Strategy {
        match self {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Direct => Strategy::Direct,
            StrategyArg::Expansion => Strategy::Expansion,
            StrategyArg::Em => Strategy::EulerMaclaurin,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StrategyArg::Auto => "auto",
            StrategyArg::Direct => "direct",
            StrategyArg::Expansion => "expansion",
            StrategyArg::Em => "em",
        }
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Point `RE,IM`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
    pub s: Complex64,
    #[arg(long)]
    pub q: f64,
    #[arg(long)]
    pub nu: Option<u32>,
    #[arg(long)]
    pub mu: Option<u32>,
    /// Second variable `RE,IM` of `f` and `g`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
    pub t: Option<Complex64>,
    /// Character file or `principal:N`.
    #[arg(long, value_parser = parse::character)]
    pub chi: Option<CharArg>,
    /// Hurwitz shift in (0, 1].
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long, value_enum, default_value = "auto")]
    pub strategy: StrategyArg,
    /// Truncation tolerance of the series routes.
    #[arg(long, default_value_t = 1e-13)]
    pub tol: f64,
    /// Remainder target of the Euler-Maclaurin route.
    #[arg(long, default_value_t = 1e-11)]
    pub em_target: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
    pub s: Complex64,
    #[arg(long)]
    pub q: f64,
    #[arg(long, default_value_t = 1)]
    pub nu: u32,
    #[arg(long, default_value_t = 1e-5)]
    pub target: f64,
    /// Head cutoff N; with --depth and --order, checks these parameters instead of searching.
    #[arg(long, requires_all = ["depth", "order"])]
    pub head: Option<usize>,
    #[arg(long, requires = "head")]
    pub depth: Option<usize>,
    #[arg(long, requires = "head")]
    pub order: Option<usize>,
    /// Fourier window half-width L, giving l in [-L, L].
    #[arg(long, default_value_t = 4096)]
    pub window: i64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ZeroArgs {
    #[arg(long)]
    pub q: f64,
    #[arg(long, default_value_t = 1)]
    pub nu: u32,
    /// Newton start `RE,IM`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse::complex, conflicts_with = "bracket", required_unless_present = "bracket")]
    pub guess: Option<Complex64>,
    /// Real bracket `A,B` for bisection.
    #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
    pub bracket: Option<Complex64>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct TrajectoryArgs {
    /// `trivial:J`, `rho:J` or `RE,IM`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse::origin)]
    pub origin: OriginArg,
    #[arg(long, default_value_t = 1)]
    pub nu: u32,
    /// `standard` (0.99 down to 0.01, then 1e-3, 1e-4, 1e-5) or a file of q values.
    #[arg(long, default_value = "standard", value_parser = parse::schedule)]
    pub schedule: ScheduleArg,
    /// Residual accepted as a zero.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Field,
    Candidates,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Corners `RE1,IM1,RE2,IM2`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse::rect)]
    pub rect: (Complex64, Complex64),
    /// Nodes `NX,NY`.
    #[arg(long, default_value = "41,41", value_parser = parse::grid)]
    pub grid: (usize, usize),
    #[arg(long)]
    pub q: f64,
    #[arg(long, default_value_t = 1)]
    pub nu: u32,
    #[arg(long, value_enum, default_value = "field")]
    pub mode: ModeArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CrystalArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
    pub s: Complex64,
    #[arg(long, default_value_t = 1)]
    pub nu: u32,
    #[arg(long, value_parser = parse::character)]
    pub chi: Option<CharArg>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SpecialArgs {
    /// Evaluate at s = -m.
    #[arg(long)]
    pub m: u32,
    #[arg(long, default_value_t = 1)]
    pub nu: u32,
    #[arg(long)]
    pub q: f64,
    #[arg(long, value_parser = parse::character)]
    pub chi: Option<CharArg>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
    pub s: Complex64,
    /// Comma-separated q values.
    #[arg(long, value_parser = parse::float_list)]
    pub q_list: FloatList,
    #[arg(long, default_value_t = 1)]
    pub nu: u32,
    #[arg(long, default_value_t = 1)]
    pub mu: u32,
    #[arg(long, value_parser = parse::character)]
    pub chi: Option<CharArg>,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[command(flatten)]
    pub common: Common,
}

/// `key=value` pairs of a config file. Blank lines and `#` comments are skipped,
/// except `# param key=value` lines, which report headers write.
pub fn parse_config(body: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (n, raw) in body.lines().enumerate() {
        let line = raw.trim();
        let line = match line.strip_prefix("# param ") {
            Some(rest) => rest.trim(),
            None if line.is_empty() || line.starts_with('#') => continue,
            None => line,
        };
        let (k, v) = line.split_once('=').ok_or_else(|| format!("config line {}: expected key=value", n + 1))?;
        let k = k.trim();
        if k.is_empty() || k == "config" {
            return Err(format!("config line {}: invalid key `{k}`", n + 1));
        }
        out.push((k.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Inserts the pairs of a `--config` file right after the subcommand, so that
/// later command-line flags override them.
pub fn expand_config(argv: Vec<OsString>) -> Result<Vec<OsString>, String> {
    if argv.len() < 2 || argv[1].to_string_lossy().starts_with('-') {
        return Ok(argv);
    }
    let mut path = None;
    for (i, a) in argv.iter().enumerate().skip(2) {
        let a = a.to_string_lossy();
        if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else if a == "--config" {
            path = argv.get(i + 1).map(|p| p.to_string_lossy().into_owned());
        }
    }
    let Some(path) = path else {
        return Ok(argv);
    };
    let body = fs::read_to_string(&path).map_err(|e| format!("config file `{path}`: {e}"))?;
    let injected = parse_config(&body)?.into_iter().map(|(k, v)| OsString::from(format!("--{k}={v}")));
    let mut out: Vec<OsString> = argv[..2].to_vec();
    out.extend(injected);
    out.extend(argv[2..].iter().cloned());
    Ok(out)
}
