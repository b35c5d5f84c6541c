//! `packd`: reproduce known packing densities, run the lattice search,
//! build explicit constructions and verify arrangement files.

mod manifest;
mod reproduce;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use packd::catalog::{make_base, make_body, BaseSpec, BodySpec, BASES, BODIES};
use packd::construct::{self, ConstructionReport};
use packd::exec::{init_threads, Exec};
use packd::geom::ConvexBody;
use packd::io::{arrangement_from_json, arrangement_to_obj, ArrangementFile, BodyFile};
use packd::lattice::PeriodicArrangement;
use packd::optimize::{optimize_lattice, optimize_lstar, OptimizerConfig};
use packd::verify::{check_arrangement, required_window};
use serde_json::json;

use manifest::RunManifest;

#[derive(Parser, Debug)]
#[command(name = "packd", version, about = "Lattice packings of convex polytopes")]
struct Cli {
    /// Worker threads for the parallel stages.
    #[arg(long, global = true, env = "PACKD_THREADS")]
    threads: Option<usize>,
    /// Run every stage on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Print the body catalog and exit.
    #[arg(long)]
    list_bodies: bool,
    /// Print the constants table as CSV and exit.
    #[arg(long)]
    dump_constants: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(clap::Args, Debug, Clone)]
struct SearchArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    #[arg(long, default_value_t = 2000)]
    iterations: usize,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Target {
    Table1,
    Bounds,
    Constructions,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Mode {
    Lattice,
    Lstar,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ExportFormat {
    Obj,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ConstructionName {
    SquarePyramid,
    ConwayTorquato,
    HexagonPair,
    ConeOverHexagon,
    OctahedronEnclosure,
    CircularCone,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recompute a group of reference values and compare.
    Reproduce {
        #[arg(value_enum)]
        target: Target,
        #[command(flatten)]
        search: SearchArgs,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a dense lattice packing of a body.
    Optimize {
        /// Catalog name (`name:key=value,...`) or a body JSON file.
        #[arg(long)]
        body: String,
        #[arg(long, value_enum, default_value_t = Mode::Lattice)]
        mode: Mode,
        #[command(flatten)]
        search: SearchArgs,
        /// Arrangement JSON output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        export: Option<ExportFormat>,
    },
    /// Check an arrangement file for overlaps.
    Verify {
        file: PathBuf,
        /// Window radius; defaults to three motif circumradii.
        #[arg(long)]
        window: Option<f64>,
    },
    /// Build one of the explicit constructions.
    Construct {
        #[arg(value_enum)]
        name: ConstructionName,
        /// Hexagon legs for the hexagon constructions.
        #[arg(long, default_value_t = 0.5)]
        a: f64,
        #[arg(long, default_value_t = 0.5)]
        b: f64,
        /// Base of the octahedron enclosure (catalog base name).
        #[arg(long, default_value = "polygon:k=6")]
        base: String,
        /// Polygon resolution of the circular cone.
        #[arg(long, default_value_t = 64)]
        sides: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        export: Option<ExportFormat>,
    },
    /// List catalog bodies and bases.
    Bodies,
    /// Print the constants table as CSV.
    DumpConstants,
}

/// Failures that map to exit code 2.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<ExitCode, InputError>;

fn config(search: &SearchArgs, exec: Exec) -> Result<OptimizerConfig, InputError> {
    let cfg = OptimizerConfig::default().with_seed(search.seed).with_restarts(search.restarts).with_iterations(search.iterations).with_exec(exec);
    cfg.validate()?;
    Ok(cfg)
}

fn load_body(arg: &str, manifest: &mut RunManifest) -> Result<(String, ConvexBody), InputError> {
    let path = Path::new(arg);
    if path.is_file() {
        let bytes = std::fs::read(path)?;
        manifest.record_input(arg, &bytes);
        let file: BodyFile = serde_json::from_slice(&bytes)?;
        return Ok((arg.to_string(), file.to_body()?));
    }
    if let Ok(spec) = arg.parse::<BodySpec>() {
        return Ok((spec.to_string(), make_body(&spec)?));
    }
    match arg.parse::<BaseSpec>() {
        Ok(spec) => Ok((arg.to_string(), make_base(&spec)?)),
        Err(_) => Err(InputError(format!("'{arg}' is neither a file nor a catalog body"))),
    }
}

fn write_arrangement(a: &PeriodicArrangement, out: &Option<PathBuf>, export: Option<ExportFormat>, manifest: &RunManifest) -> Result<(), InputError> {
    if let Some(path) = out {
        let mut file = ArrangementFile::from_arrangement(a);
        file.manifest = Some(manifest.to_json());
        std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
    }
    if let Some(ExportFormat::Obj) = export {
        let path = out.as_ref().map(|p| p.with_extension("obj")).unwrap_or_else(|| PathBuf::from("packd.obj"));
        std::fs::write(path, arrangement_to_obj(a, 1))?;
    }
    Ok(())
}

/// Writes to stdout; a closed pipe (`packd ... | head`) is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &serde_json::Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("serialisable")));
}

fn list_bodies() {
    let mut text = String::from("bodies:\n");
    for e in BODIES {
        text += &format!("  {:<22} {:<32} {}\n", e.name, e.params, e.description);
    }
    text += "bases:\n";
    for e in BASES {
        text += &format!("  {:<22} {:<32} {}\n", e.name, e.params, e.description);
    }
    emit(&text);
}

fn reproduce(target: Target, search: &SearchArgs, out: &Option<PathBuf>, exec: Exec) -> Outcome {
    let cfg = config(search, exec)?;
    let mut manifest = RunManifest::start(Some(search.seed));
    let rows = match target {
        Target::Table1 => reproduce::table1(&cfg).map_err(InputError)?,
        Target::Bounds => reproduce::bounds(),
        Target::Constructions => reproduce::constructions(&cfg).map_err(InputError)?,
    };
    manifest.finish();
    let text = format!("{}{}", manifest.csv_header(), reproduce::to_csv(&rows));
    match out {
        Some(p) => std::fs::write(p, &text)?,
        None => emit(&text),
    }
    Ok(if rows.iter().all(|r| r.pass) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn optimize(body: &str, mode: Mode, search: &SearchArgs, out: &Option<PathBuf>, export: Option<ExportFormat>, exec: Exec) -> Outcome {
    let cfg = config(search, exec)?;
    let mut manifest = RunManifest::start(Some(search.seed));
    let (name, k) = load_body(body, &mut manifest)?;
    let r = match mode {
        Mode::Lattice => optimize_lattice(&k, &cfg)?,
        Mode::Lstar => {
            if k.dim() != 3 {
                return Err(InputError("lstar mode needs a body in space".into()));
            }
            optimize_lstar(&k, &cfg)?
        }
    };
    manifest.finish();
    let a = r.arrangement(&k);
    write_arrangement(&a, out, export, &manifest)?;
    print_json(&json!({
        "body": name,
        "mode": r.mode,
        "density": r.density,
        "certified": r.certified,
        "lattice": r.lattice.vectors().iter().map(|v| v.to_vec(k.dim())).collect::<Vec<_>>(),
        "shift": r.shift.map(|v| v.to_vec(k.dim())),
        "best_restart": r.best_restart,
        "evaluations": r.evaluations,
        "manifest": manifest.to_json(),
    }));
    Ok(if r.certified { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn verify(file: &Path, window: Option<f64>, exec: Exec) -> Outcome {
    let mut manifest = RunManifest::start(None);
    let bytes = std::fs::read(file)?;
    manifest.record_input(&file.display().to_string(), &bytes);
    let a = arrangement_from_json(std::str::from_utf8(&bytes)?)?;
    let required = required_window(&a);
    let radius = window.unwrap_or(3.0 * a.motif_radius()).max(required);
    let report = check_arrangement(&a, radius, exec)?;
    manifest.finish();
    print_json(&json!({ "density": a.density(), "report": report, "manifest": manifest.to_json() }));
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn construct_cmd(name: ConstructionName, a: f64, b: f64, base: &str, sides: usize, search: &SearchArgs, exec: Exec) -> Result<ConstructionReport, InputError> {
    use ConstructionName::*;
    Ok(match name {
        SquarePyramid => construct::square_pyramid_packing_with_height(1.0, exec)?,
        ConwayTorquato => construct::conway_torquato_packing_with(exec)?,
        HexagonPair => construct::hexagon_pair_tiling(a, b)?,
        ConeOverHexagon => construct::cone_over_hexagon_packing_with_height(a, b, 1.0, exec)?,
        OctahedronEnclosure => construct::octahedron_enclosure_packing_with(&make_base(&base.parse::<BaseSpec>()?)?, exec)?,
        CircularCone => construct::circular_cone_packing(sides, &config(search, exec)?)?,
    })
}

fn run(cli: Cli) -> Outcome {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(InputError("thread count must be positive".into()));
        }
        init_threads(n);
    }
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    if cli.list_bodies {
        list_bodies();
        return Ok(ExitCode::SUCCESS);
    }
    if cli.dump_constants {
        emit(&packd::formulas::ledger_csv());
        return Ok(ExitCode::SUCCESS);
    }
    match cli.command {
        None => Err(InputError("no command given; see --help".into())),
        Some(Command::Bodies) => {
            list_bodies();
            Ok(ExitCode::SUCCESS)
        }
        Some(Command::DumpConstants) => {
            emit(&packd::formulas::ledger_csv());
            Ok(ExitCode::SUCCESS)
        }
        Some(Command::Reproduce { target, search, out }) => reproduce(target, &search, &out, exec),
        Some(Command::Optimize { body, mode, search, out, export }) => optimize(&body, mode, &search, &out, export, exec),
        Some(Command::Verify { file, window }) => verify(&file, window, exec),
        Some(Command::Construct { name, a, b, base, sides, search, out, export }) => {
            let mut manifest = RunManifest::start(Some(search.seed));
            let r = construct_cmd(name, a, b, &base, sides, &search, exec)?;
            manifest.finish();
            write_arrangement(&r.arrangement, &out, export, &manifest)?;
            print_json(&json!({ "construction": r, "manifest": manifest.to_json() }));
            Ok(if r.verified { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
