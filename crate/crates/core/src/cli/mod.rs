//! The `gm` command-line front end.

pub mod parser;
pub mod report;

use std::fmt;

use clap::{Parser, ValueEnum};

use crate::brieskorn::{
    gm_connection_qh, spectral_first_order, t_matrix, working_degree, LocalContext, SpectralData, TMatrix,
};
use crate::connection::{monodromy_rotation_numbers, sorted_rational_eigenvalues, FormalMeromorphicConnection, Lattice, Saturation, Verdict};
use crate::error::Error;
use crate::local::default_degree_bound;
use crate::series::{MultiPoly, QMatrix};

pub use parser::{parse_poly, ParseError, PolyExpr};
pub use report::Report;

/// Environment variable overriding the default `s`- and `t`-precisions.
pub const DEFAULT_PREC_ENV: &str = "GM_DEFAULT_PREC";
pub const DEFAULT_PREC: i64 = 10;
/// Extra precision of the truncation-stability recomputation.
pub const STABILITY_MARGIN: i64 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Milnor,
    Basis,
    Tmatrix,
    Connection,
    Saturate,
    Spectrum,
    All,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub prec_s: i64,
    /// `None` selects `max(10, 3 deg f)`.
    pub prec_x: Option<u32>,
    pub prec_t: i64,
    pub format: Format,
    pub stability_check: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { prec_s: DEFAULT_PREC, prec_x: None, prec_t: DEFAULT_PREC, format: Format::Json, stability_check: true }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let low = |name: &str| CliError::Usage(format!("{name} must be at least 2"));
        if self.prec_s < 2 {
            return Err(low("--prec-s"));
        }
        if self.prec_t < 2 {
            return Err(low("--prec-t"));
        }
        if matches!(self.prec_x, Some(d) if d < 2) {
            return Err(low("--prec-x"));
        }
        Ok(())
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(ParseError),
    Math(Error),
}

impl CliError {
    /// 1 for usage and parse errors, 2 for mathematical verdicts.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 1,
            CliError::Math(Error::InvalidArgument(_)) => 1,
            CliError::Math(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Math(e) => write!(f, "error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Math(e)
    }
}

/// Library objects behind one report.
struct Analysis {
    ctx: LocalContext,
    degree_bound: u32,
    tmatrix: Option<TMatrix>,
    spectral: Option<SpectralData>,
    connection: Option<FormalMeromorphicConnection>,
    saturation: Option<Saturation>,
    residue: Option<QMatrix>,
}

impl Command {
    fn needs_tmatrix(self) -> bool {
        matches!(self, Command::Tmatrix | Command::Spectrum | Command::All)
    }

    fn needs_connection(self) -> bool {
        matches!(self, Command::Connection | Command::Saturate | Command::Spectrum | Command::All)
    }

    fn needs_saturation(self) -> bool {
        matches!(self, Command::Saturate | Command::Spectrum | Command::All)
    }
}

impl Analysis {
    fn compute(command: Command, f: &MultiPoly, degree_bound: u32, prec_s: i64, prec_t: i64) -> Result<Self, Error> {
        let ctx = if command.needs_tmatrix() {
            LocalContext::for_precision(f, degree_bound, prec_s)?
        } else {
            LocalContext::new(f, degree_bound)?
        };
        let qh = ctx.report().weights.is_some();
        let tmatrix = if command.needs_tmatrix() { Some(t_matrix(&ctx, prec_s)?) } else { None };
        let spectral = match &tmatrix {
            Some(t) if matches!(command, Command::Spectrum | Command::All) => Some(spectral_first_order(t)?),
            _ => None,
        };
        let connection = if command.needs_connection() && (qh || command == Command::Connection) {
            Some(gm_connection_qh(&ctx, prec_t)?)
        } else {
            None
        };
        let (saturation, residue) = match &connection {
            Some(conn) if command.needs_saturation() => {
                let sat = conn.saturate(&Lattice::standard(conn.dim(), prec_t), prec_t as usize);
                let residue = if sat.verdict == Verdict::Regular { Some(conn.residue(&sat.lattice)?) } else { None };
                (Some(sat), residue)
            }
            _ => (None, None),
        };
        Ok(Analysis { ctx, degree_bound, tmatrix, spectral, connection, saturation, residue })
    }

    fn report(&self, command: Command, prec_s: i64, prec_t: i64) -> Result<Report, Error> {
        use report::*;
        let r = self.ctx.report();
        let vars = self.ctx.f().vars();
        let qh = r.weights.is_some();
        let show_basis = command != Command::Milnor;
        let spectral_fields = qh && matches!(command, Command::Spectrum | Command::All);
        let rotations = match &self.residue {
            Some(res) if spectral_fields || command == Command::Saturate => Some(rationals(&monodromy_rotation_numbers(res)?)),
            _ => None,
        };
        let residues = match &self.residue {
            Some(res) if spectral_fields || command == Command::Saturate => Some(rationals(&sorted_rational_eigenvalues(res)?)),
            _ => None,
        };
        let general = self.spectral.as_ref().filter(|_| !qh);
        let verdict = if command.needs_saturation() {
            Some(self.saturation.as_ref().map_or(Verdict::Inconclusive, |s| s.verdict).as_str().to_string())
        } else {
            None
        };
        Ok(Report {
            mu: r.mu,
            basis: show_basis.then(|| r.basis_monomials.iter().map(|m| monomial_label(vars, m)).collect()),
            weights: r.weights.as_deref().map(rationals),
            t_matrix: self.tmatrix.as_ref().map(|t| series_matrix(&t.matrix().truncate(prec_s))),
            connection: self.connection.as_ref().filter(|_| command != Command::Spectrum).map(|c| ConnectionJson {
                labels: c.labels().to_vec(),
                matrix: series_matrix(&c.matrix().truncate(prec_t)),
            }),
            exponents: if spectral_fields { self.spectral.as_ref().and_then(|s| s.exponents.as_deref()).map(rationals) } else { None },
            residues,
            rotations,
            a0: general.map(|s| qmatrix(&s.a0)),
            a1: general.map(|s| qmatrix(&s.a1)),
            nilpotent_a0: general.map(|s| s.nilpotent_a0),
            verdict,
            precisions: Precisions {
                prec_s,
                prec_x: self.degree_bound,
                prec_t,
                working_degree: if command.needs_tmatrix() { working_degree(&self.ctx, prec_s) } else { self.ctx.degree_bound() },
            },
        })
    }
}

/// Runs one command on `f`, including the truncation-stability recheck at
/// `(D + 5, N + 5)` unless disabled.
pub fn run(command: Command, f: &MultiPoly, config: &RunConfig) -> Result<Report, CliError> {
    config.validate()?;
    if f.nvars() == 0 {
        return Err(CliError::Usage("the polynomial must involve at least one variable".into()));
    }
    let d = config.prec_x.unwrap_or_else(|| default_degree_bound(f));
    let (ns, nt) = (config.prec_s, config.prec_t);
    let base = Analysis::compute(command, f, d, ns, nt)?;
    let report = base.report(command, ns, nt)?;
    if config.stability_check {
        let m = STABILITY_MARGIN;
        let wide = Analysis::compute(command, f, d + m as u32, ns + m, nt + m)?;
        let mut check = wide.report(command, ns, nt)?;
        check.precisions = report.precisions.clone();
        if check != report {
            return Err(Error::UnstableTruncation(format!(
                "results differ between (D, N) = ({d}, {ns}) and ({}, {})",
                d + m as u32,
                ns + m
            ))
            .into());
        }
    }
    Ok(report)
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Table => report.to_table(),
    }
}

#[derive(Debug, Parser)]
#[command(name = "gm", version, about = "Gauss-Manin connection data of isolated hypersurface singularities")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Polynomial in x, y, z, w or x0..x9, e.g. "x^2+y^3".
    pub polynomial: String,
    /// s-adic precision N of Brieskorn lattice data.
    #[arg(long)]
    pub prec_s: Option<i64>,
    /// Degree bound D of the local standard basis.
    #[arg(long)]
    pub prec_x: Option<u32>,
    /// t-adic precision of connection data.
    #[arg(long)]
    pub prec_t: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub no_stability_check: bool,
}

impl Args {
    /// Builds the run configuration; `default_prec` is the value of
    /// `GM_DEFAULT_PREC`, if set.
    pub fn config(&self, default_prec: Option<&str>) -> Result<RunConfig, CliError> {
        let fallback = match default_prec {
            None => DEFAULT_PREC,
            Some(v) => v
                .trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("{DEFAULT_PREC_ENV} must be an integer, got {v:?}")))?,
        };
        let config = RunConfig {
            prec_s: self.prec_s.unwrap_or(fallback),
            prec_x: self.prec_x,
            prec_t: self.prec_t.unwrap_or(fallback),
            format: self.format,
            stability_check: !self.no_stability_check,
        };
        config.validate()?;
        Ok(config)
    }
}

/// Outcome of one invocation: exit code plus the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Full CLI behaviour on an argument vector (including the program name).
pub fn execute<I, T>(argv: I, default_prec: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute_args(&args, default_prec) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("{e}\n") },
    }
}

fn execute_args(args: &Args, default_prec: Option<&str>) -> Result<String, CliError> {
    let config = args.config(default_prec)?;
    let f = parse_poly(&args.polynomial).map_err(CliError::Parse)?.to_poly();
    let report = run(args.command, &f, &config)?;
    Ok(render(&report, config.format))
}
