//! Command-line front end: profiles, spectra, scattering sweeps, soliton
//! fields and the verification suite.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 oracle mismatch,
//! 4 numeric domain or numerical failure.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::darboux::{deformed_potential, SystemSpec};
use crate::error::Error;
use crate::format::{float, json_number};
use crate::kdv::{self, SolitonData};
use crate::scattering;
use crate::spectral::{self, GridSpec, StencilOrder};
use crate::verify::{self, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_ORACLE_MISMATCH: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "soliton-crum", version, about = "Darboux–Crum deformed soliton potentials and integer KdV solitons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the deformed potential on an x-grid (columns x,u).
    Potential(PotentialArgs),
    /// Bound-state energies and norming constants, closed form and oracle.
    Spectrum(SpectrumArgs),
    /// Transmission and reflection amplitudes over a K-grid.
    Scattering(ScatteringArgs),
    /// Sample the GLM soliton field u(x,t) (columns t,x,u).
    Soliton(SolitonArgs),
    /// Run an acceptance suite and print one line per check.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Base coupling h > 0.
    #[arg(long, allow_hyphen_values = true)]
    pub h: f64,
    /// Even seed degrees, strictly increasing (e.g. 2,4).
    #[arg(long, value_delimiter = ',')]
    pub seeds: Vec<u32>,
}

impl SystemArgs {
    fn spec(&self) -> Result<SystemSpec, Failure> {
        Ok(SystemSpec::new(self.h, self.seeds.clone())?)
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Args)]
pub struct XGrid {
    #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
    pub xmin: f64,
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    pub xmax: f64,
    /// Number of grid points (1 samples xmin only).
    #[arg(long, default_value_t = 201)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct PotentialArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub grid: XGrid,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Oracle grid half-width.
    #[arg(long, default_value_t = 20.0)]
    pub half_width: f64,
    /// Oracle grid points (odd, >= 501).
    #[arg(long, default_value_t = 8001)]
    pub grid_points: usize,
    /// Allowed closed-form vs oracle energy difference.
    #[arg(long, default_value_t = 1e-6)]
    pub energy_tol: f64,
    /// Allowed closed-form vs oracle norming-constant difference.
    #[arg(long, default_value_t = 1e-3)]
    pub norming_tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScatteringArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Explicit wave numbers; overrides the kmin/kmax/nk grid.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub kmin: f64,
    #[arg(long, default_value_t = 10.0)]
    pub kmax: f64,
    #[arg(long, default_value_t = 100)]
    pub nk: usize,
    /// Add ODE-integration amplitudes as extra columns.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SolitonArgs {
    /// Derive scattering data from --h/--seeds (integer h only).
    #[arg(long)]
    pub from_spec: bool,
    #[arg(long)]
    pub h: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub seeds: Vec<u32>,
    /// Explicit decay rates, ascending.
    #[arg(long, value_delimiter = ',')]
    pub kappas: Vec<f64>,
    /// Explicit norming constants at t = 0.
    #[arg(long, value_delimiter = ',')]
    pub c0: Vec<f64>,
    /// Single sample point in x (overrides the x-grid).
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    /// Single sample time (overrides the t-grid).
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    #[command(flatten)]
    pub grid: XGrid,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub tmin: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub tmax: f64,
    #[arg(long, default_value_t = 1)]
    pub nt: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// spectra | scattering | glm | kdv | all
    #[arg(long, default_value = "all")]
    pub suite: String,
}

/// An error paired with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) | Error::NodalWronskian { .. } => EXIT_BAD_INPUT,
            _ => EXIT_NUMERIC,
        };
        Self::new(code, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::new(EXIT_BAD_INPUT, format!("i/o error: {e}"))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

/// Runs a parsed command; returns the exit code for non-error outcomes.
pub fn execute(command: &Command) -> Result<i32, Failure> {
    match command {
        Command::Potential(a) => cmd_potential(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Scattering(a) => cmd_scattering(a),
        Command::Soliton(a) => cmd_soliton(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn grid_points(min: f64, max: f64, n: usize, what: &str) -> Result<Vec<f64>, Failure> {
    if !(min.is_finite() && max.is_finite()) {
        return Err(Failure::new(EXIT_BAD_INPUT, format!("{what} range must be finite")));
    }
    match n {
        0 => Err(Failure::new(EXIT_BAD_INPUT, format!("{what} grid needs at least one point"))),
        1 if min <= max => Ok(vec![min]),
        _ if min < max => Ok((0..n).map(|i| min + (max - min) * i as f64 / (n - 1) as f64).collect()),
        _ => Err(Failure::new(EXIT_BAD_INPUT, format!("{what}min must be below {what}max, got {min} and {max}"))),
    }
}

fn table(headers: &[&str], rows: &[Vec<f64>], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut s = headers.join(",");
            s.push('\n');
            for row in rows {
                s.push_str(&row.iter().map(|v| float(*v)).collect::<Vec<_>>().join(","));
                s.push('\n');
            }
            s
        }
        OutputFormat::Json => {
            let records: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let mut m = Map::new();
                    for (h, v) in headers.iter().zip(row) {
                        m.insert((*h).to_string(), json_number(*v));
                    }
                    Value::Object(m)
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&records).expect("serializable");
            s.push('\n');
            s
        }
    }
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), Failure> {
    match &out.output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_potential(a: &PotentialArgs) -> Result<i32, Failure> {
    let spec = a.system.spec()?;
    let sys = deformed_potential(&spec)?;
    let rows: Vec<Vec<f64>> = grid_points(a.grid.xmin, a.grid.xmax, a.grid.n, "x")?
        .into_iter()
        .map(|x| vec![x, sys.potential(x)])
        .collect();
    emit(&a.out, &table(&["x", "u"], &rows, a.out.format.unwrap_or(OutputFormat::Csv)))?;
    Ok(EXIT_OK)
}

fn cmd_spectrum(a: &SpectrumArgs) -> Result<i32, Failure> {
    let spec = a.system.spec()?;
    if !(a.energy_tol > 0.0 && a.norming_tol > 0.0) {
        return Err(Failure::new(EXIT_BAD_INPUT, "tolerances must be positive"));
    }
    let sys = Arc::new(deformed_potential(&spec)?);
    let states = sys.bound_states()?;
    let grid = GridSpec::new(a.half_width, a.grid_points, StencilOrder::Fourth)?;
    let pairs = spectral::eigen_spectrum(sys.as_ref(), &grid)?;
    let oracle_c = spectral::oracle_norming_constants(sys.as_ref(), &grid)?;

    let mut mismatch = Vec::new();
    if pairs.len() != states.len() {
        mismatch.push(format!("oracle found {} levels, closed form has {}", pairs.len(), states.len()));
    }
    let mut levels = Vec::new();
    let mut rows = Vec::new();
    for (i, st) in states.iter().enumerate() {
        let oracle_e = pairs.get(i).map_or(f64::NAN, |p| p.energy);
        let oracle_n = oracle_c.get(i).map_or(f64::NAN, |c| c.1);
        let de = (oracle_e - st.energy).abs();
        let dc = (oracle_n - st.norming_constant).abs();
        if !(de <= a.energy_tol) {
            mismatch.push(format!("energy {}: oracle differs by {de:e}", float(st.energy)));
        }
        if !(dc <= a.norming_tol) {
            mismatch.push(format!("norming constant at kappa {}: oracle differs by {dc:e}", float(st.kappa)));
        }
        levels.push(json!({
            "kind": st.kind.to_string(),
            "kappa": json_number(st.kappa),
            "energy": json_number(st.energy),
            "norming_constant": json_number(st.norming_constant),
            "oracle_energy": json_number(oracle_e),
            "oracle_norming_constant": json_number(oracle_n),
            "energy_difference": json_number(de),
            "norming_constant_difference": json_number(dc),
        }));
        rows.push(vec![st.kappa, st.energy, st.norming_constant, oracle_e, oracle_n, de, dc]);
    }
    let text = match a.out.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => {
            let doc = json!({
                "h": json_number(spec.h()),
                "seeds": spec.seeds(),
                "levels": levels,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Csv => table(
            &[
                "kappa",
                "energy",
                "norming_constant",
                "oracle_energy",
                "oracle_norming_constant",
                "energy_difference",
                "norming_constant_difference",
            ],
            &rows,
            OutputFormat::Csv,
        ),
    };
    emit(&a.out, &text)?;
    if mismatch.is_empty() {
        Ok(EXIT_OK)
    } else {
        Err(Failure::new(EXIT_ORACLE_MISMATCH, mismatch.join("; ")))
    }
}

fn cmd_scattering(a: &ScatteringArgs) -> Result<i32, Failure> {
    let spec = a.system.spec()?;
    let ks = if a.k.is_empty() { grid_points(a.kmin, a.kmax, a.nk, "k")? } else { a.k.clone() };
    let sys = if a.oracle { Some(deformed_potential(&spec)?) } else { None };
    let mut rows = Vec::with_capacity(ks.len());
    for &k in &ks {
        let amp = scattering::deformed_amplitudes(&spec, k)?;
        let mut row =
            vec![k, amp.t.re, amp.t.im, amp.r.re, amp.r.im, amp.t.norm(), amp.r.norm(), amp.unitarity_defect().abs()];
        if let Some(sys) = &sys {
            let num = scattering::numerical_amplitudes(sys, k)?;
            row.extend([num.t.re, num.t.im, num.r.re, num.r.im]);
        }
        rows.push(row);
    }
    let mut headers = vec!["K", "re_t", "im_t", "re_r", "im_r", "abs_t", "abs_r", "unitarity_defect"];
    if a.oracle {
        headers.extend(["re_t_oracle", "im_t_oracle", "re_r_oracle", "im_r_oracle"]);
    }
    emit(&a.out, &table(&headers, &rows, a.out.format.unwrap_or(OutputFormat::Csv)))?;
    Ok(EXIT_OK)
}

fn soliton_data(a: &SolitonArgs) -> Result<SolitonData, Failure> {
    if a.from_spec {
        let h = a.h.ok_or_else(|| Failure::new(EXIT_BAD_INPUT, "--from-spec needs --h"))?;
        let spec = SystemSpec::new(h, a.seeds.clone())?;
        Ok(kdv::scattering_data_from_spec(&spec)?)
    } else if !a.kappas.is_empty() {
        Ok(SolitonData::new(a.kappas.clone(), a.c0.clone())?)
    } else {
        Err(Failure::new(EXIT_BAD_INPUT, "give either --from-spec --h H [--seeds ...] or --kappas ... --c0 ..."))
    }
}

fn cmd_soliton(a: &SolitonArgs) -> Result<i32, Failure> {
    let data = soliton_data(a)?;
    let xs = match a.x {
        Some(x) => vec![x],
        None => grid_points(a.grid.xmin, a.grid.xmax, a.grid.n, "x")?,
    };
    let ts = match a.t {
        Some(t) => vec![t],
        None => grid_points(a.tmin, a.tmax, a.nt, "t")?,
    };
    let mut rows = Vec::with_capacity(xs.len() * ts.len());
    for &t in &ts {
        for &x in &xs {
            let u = kdv::field_u(&data, x, t).map_err(|e| match e {
                Error::Domain { .. } | Error::NonFinite(_) => {
                    Failure::new(EXIT_NUMERIC, format!("cannot evaluate u at (x, t) = ({x}, {t}): {e}"))
                }
                other => other.into(),
            })?;
            rows.push(vec![t, x, u]);
        }
    }
    emit(&a.out, &table(&["t", "x", "u"], &rows, a.out.format.unwrap_or(OutputFormat::Csv)))?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs) -> Result<i32, Failure> {
    let suite: Suite = a.suite.parse()?;
    let mut all_passed = true;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for c in verify::run_suite(suite) {
        writeln!(out, "[{}] {} {}", c.number, c.title, if c.passed() { "PASS" } else { "FAIL" })?;
        for check in &c.checks {
            writeln!(out, "    {check}")?;
        }
        all_passed &= c.passed();
    }
    Ok(if all_passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
}
