//! Command-line front end for lutz-core: `verify`, `plot` and `trace`.

pub mod document;
pub mod plot;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use lutz_core::analysis::DEFAULT_POINTS;
use lutz_core::constructions::{blob, double, euler, giroux, lutz, otw, prelag, tube, twist};
use lutz_core::report::ConstructionReport;
use lutz_core::slice::{parse_fixed, sample_slice, slice_field, SliceOptions, DEFAULT_SLICE_POINTS};
use lutz_core::{handles, surgery, Error};

use document::{ReportDocument, TraceDocument};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const SEED_ENV: &str = "LUTZ_SEED";
pub const DEFAULT_SEED: u64 = 42;

pub const CONSTRUCTIONS: [&str; 11] = [
    "standard-tube",
    "lutz-confoliation",
    "lutz-confoliation-line",
    "blob",
    "double",
    "euler-sections",
    "full-twist",
    "giroux-domain",
    "prelag-blowup",
    "otw-disc",
    "round-handle",
];

#[derive(Debug, Parser)]
#[command(name = "lutz", version, about = "Verify Lutz-twist constructions, plot slices, replay surgery recipes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a construction's check table and write a JSON report.
    Verify(VerifyArgs),
    /// Sample a construction on a plane and write an SVG plus a CSV.
    Plot(PlotArgs),
    /// Replay a surgery recipe.
    Trace(TraceArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Half of dim − 1 for tube-type constructions.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub fold: usize,
    /// Round handle: m with the handle living in dimension 2m + 2.
    #[arg(long)]
    pub half_dim: Option<usize>,
    #[arg(long)]
    pub index: Option<usize>,
    #[arg(long, default_value_t = otw::DEFAULT_EPSILON)]
    pub epsilon: f64,
    #[arg(long = "big-c", default_value_t = otw::DEFAULT_C)]
    pub big_c: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub name: String,
    #[command(flatten)]
    pub common: Common,
    /// Points per axis for grid certificates.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    pub name: String,
    #[command(flatten)]
    pub common: Common,
    /// Fixed coordinates, `name=value,...`.
    #[arg(long, default_value = "")]
    pub fix: String,
    /// The two plotted coordinates, `c1,c2`.
    #[arg(long)]
    pub axes: String,
    #[arg(long, default_value_t = DEFAULT_SLICE_POINTS)]
    pub grid: usize,
    /// SVG path; the CSV goes next to it.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[arg(long)]
    pub recipe: String,
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// What went wrong, mapped onto the exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Check(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Check(_) => EXIT_FAIL,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn need_dim(c: &Common, name: &str) -> Result<usize, Failure> {
    match c.dim {
        Some(n) if n >= 1 => Ok(n),
        Some(n) => Err(Failure::Usage(format!("--dim must be at least 1, got {n}"))),
        None => Err(Failure::Usage(format!("{name} needs --dim"))),
    }
}

fn handle_params(c: &Common) -> (usize, usize) {
    (c.half_dim.or(c.dim).unwrap_or(1), c.index.unwrap_or(1))
}

/// Runs the named check table.
pub fn build_report(name: &str, c: &Common, grid: Option<usize>) -> Result<ConstructionReport, Failure> {
    let g = grid.unwrap_or(DEFAULT_POINTS);
    if g < 2 {
        return Err(Failure::Usage("--grid must be at least 2".into()));
    }
    if name == "round-handle" {
        let (m, k) = handle_params(c);
        return Ok(handles::verify_round_handle(m, k, grid.unwrap_or(5))?);
    }
    if !CONSTRUCTIONS.contains(&name) {
        return Err(Failure::Usage(format!("unknown construction `{name}`; known: {}", CONSTRUCTIONS.join(", "))));
    }
    let n = need_dim(c, name)?;
    let rep = match name {
        "standard-tube" => tube::verify_standard_tube(n, g)?,
        "lutz-confoliation" => lutz::verify_lutz(n, lutz::Core::Circle, g)?,
        "lutz-confoliation-line" => lutz::verify_lutz(n, lutz::Core::Line, g)?,
        "blob" => blob::verify_blob(n, blob::Variant::Standard)?,
        "double" => double::verify_double(n, c.fold)?,
        "euler-sections" => euler::verify_euler_sections(n, g)?,
        "full-twist" => twist::verify_full_twist(n, g)?,
        "giroux-domain" => giroux::verify_giroux(n, g)?,
        "prelag-blowup" => prelag::verify_prelag(n)?,
        "otw-disc" => otw::verify_otw(n, c.epsilon, c.big_c, g)?,
        _ => unreachable!("listed above"),
    };
    Ok(rep)
}

pub fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let rep = build_report(&a.name, &a.common, a.grid)?;
    let doc = ReportDocument::new(a.seed, rep);
    match &a.out {
        Some(path) => {
            document::write_json(&doc, path)?;
            for c in &doc.checks {
                writeln!(stdout, "{:<40} {}", c.name, if c.passed() { "pass" } else { "FAIL" })?;
            }
        }
        None => stdout.write_all(document::to_json(&doc).as_bytes())?,
    }
    if doc.passed() {
        Ok(())
    } else {
        let failed: Vec<&str> = doc.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
        Err(Failure::Check(format!("{}: failed checks: {}", doc.construction, failed.join(", "))))
    }
}

pub fn csv_path(svg: &Path) -> PathBuf {
    svg.with_extension("csv")
}

pub fn cmd_plot(a: &PlotArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let n = if a.name == "round-handle" { 1 } else { need_dim(&a.common, &a.name)? };
    let (half_dim, index) = handle_params(&a.common);
    let opts = SliceOptions { fold: a.common.fold, half_dim, index, epsilon: a.common.epsilon, ..SliceOptions::default() };
    let field = slice_field(&a.name, n, &opts)?;
    let fixed = parse_fixed(&field, &a.fix)?;
    let names: Vec<&str> = a.axes.split(',').map(str::trim).collect();
    let [x, y] = names[..] else {
        return Err(Failure::Usage(format!("--axes needs two names, got `{}`", a.axes)));
    };
    let slice = sample_slice(&field, &fixed, (field.index(x)?, field.index(y)?), a.grid)?;
    let title = format!("{} ({})", field.name, field.quantity);
    std::fs::write(&a.out, plot::render_svg(&slice, &title))?;
    let csv = csv_path(&a.out);
    std::fs::write(&csv, plot::render_csv(&slice))?;
    writeln!(
        stdout,
        "{}: {} samples in domain, {} locus points; wrote {} and {}",
        field.name,
        slice.samples.iter().filter(|s| s.value.is_some()).count(),
        slice.locus.len(),
        a.out.display(),
        csv.display()
    )?;
    Ok(())
}

pub fn cmd_trace(a: &TraceArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    if !surgery::RECIPES.contains(&a.recipe.as_str()) {
        return Err(Failure::Usage(format!("unknown recipe `{}`; known: {}", a.recipe, surgery::RECIPES.join(", "))));
    }
    if a.dim == 0 {
        return Err(Failure::Usage("--dim must be at least 1".into()));
    }
    let trace = match surgery::run_recipe(&a.recipe, a.dim) {
        Ok(t) => t,
        Err(e @ Error::IllegalStep(_)) => return Err(Failure::Check(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let doc = TraceDocument::new(trace);
    match &a.out {
        Some(path) => {
            document::write_json(&doc, path)?;
            for e in &doc.trace.entries {
                writeln!(stdout, "{}", e.log.join("; "))?;
            }
        }
        None => stdout.write_all(document::to_json(&doc).as_bytes())?,
    }
    if doc.trace.final_ok {
        Ok(())
    } else {
        Err(Failure::Check(format!("{}: final state does not carry the expected tags", a.recipe)))
    }
}

/// Parses `args` and runs; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    let res = match &cli.command {
        Command::Verify(a) => cmd_verify(a, stdout),
        Command::Plot(a) => cmd_plot(a, stdout),
        Command::Trace(a) => cmd_trace(a, stdout),
    };
    match res {
        Ok(()) => EXIT_PASS,
        Err(f) => {
            let msg = match &f {
                Failure::Usage(m) => format!("error: {m}"),
                Failure::Check(m) => format!("check failure: {m}"),
            };
            let _ = writeln!(stderr, "{msg}");
            f.code()
        }
    }
}
