use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use loopcheck_core::harness::{
    experiment_from_json, fmt_f64, parse_events_csv, parse_phis, run_suite, transform_events,
    write_sweep_csv, write_transform_csv, CheckContext, HarnessError, MapSpec, PhaseGrid,
    RunManifest, SCHEMA_VERSION,
};
use loopcheck_core::interference::{no_go_search, phase_sweep, visibility, ExperimentConfig};
use loopcheck_core::kinematics::{Branch, Eta, SpeedOfLight};

#[derive(Parser)]
#[command(
    name = "loopcheck",
    version,
    about = "Frame maps, interferometer sweeps and property checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Map an events CSV through a frame map and tabulate intervals.
    Transform(TransformArgs),
    /// Sweep the interferometer phase and write the outcome table.
    Interfere(InterfereArgs),
    /// Search classical mixtures for phase dependence.
    Nogo(NogoArgs),
    /// Run the property-check suite.
    Check(CheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Subluminal,
    Superluminal,
}

#[derive(Args)]
struct TransformArgs {
    /// Events CSV with header `t,x`.
    #[arg(long)]
    events: PathBuf,
    /// Map spec JSON; overrides the inline flags.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, requires = "velocity")]
    branch: Option<BranchArg>,
    #[arg(long, allow_hyphen_values = true)]
    velocity: Option<f64>,
    /// Orientation sign for the superluminal branch, +1 or -1.
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<i8>,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InterfereArgs {
    /// Experiment JSON; the default balanced interferometer if omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_parser = parse_phis_arg)]
    phis: Option<PhaseGrid>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct NogoArgs {
    #[arg(long, value_parser = parse_phis_arg)]
    phis: Option<PhaseGrid>,
    #[arg(long, default_value_t = RunManifest::DEFAULT_RESOLUTION)]
    resolution: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = RunManifest::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = RunManifest::DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = RunManifest::DEFAULT_RESOLUTION)]
    resolution: usize,
    #[arg(long, value_parser = parse_phis_arg)]
    phis: Option<PhaseGrid>,
    /// Relative tolerance for interval identities.
    #[arg(long)]
    interval_tol: Option<f64>,
    /// Residual tolerance for cone classification.
    #[arg(long)]
    cone_tol: Option<f64>,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report on stdout instead of text.
    #[arg(long)]
    json: bool,
}

fn parse_phis_arg(s: &str) -> Result<PhaseGrid, String> {
    parse_phis(s).map_err(|e| e.to_string())
}

fn read(path: &Path) -> Result<String, HarnessError> {
    fs::read_to_string(path)
        .map_err(|e| HarnessError::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

/// Writes to `out`, or stdout when absent.
fn emit(
    out: Option<&Path>,
    f: impl FnOnce(&mut dyn Write) -> Result<(), HarnessError>,
) -> Result<(), HarnessError> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn map_spec(args: &TransformArgs) -> Result<MapSpec, HarnessError> {
    if let Some(path) = &args.config {
        return MapSpec::from_json(&read(path)?);
    }
    let Some(branch) = args.branch else {
        return Ok(MapSpec {
            c: SpeedOfLight::new(args.c)?,
            ..MapSpec::identity()
        });
    };
    let eta = args
        .eta
        .map(Eta::try_from)
        .transpose()
        .map_err(HarnessError::Json)?;
    Ok(MapSpec {
        schema: SCHEMA_VERSION,
        branch: match branch {
            BranchArg::Subluminal => Branch::Subluminal,
            BranchArg::Superluminal => Branch::Superluminal,
        },
        velocity: args.velocity,
        eta,
        linear: None,
        translation: None,
        c: SpeedOfLight::new(args.c)?,
    })
}

fn transform(args: TransformArgs) -> Result<ExitCode, HarnessError> {
    let map = map_spec(&args)?.to_frame_map()?;
    let events = parse_events_csv(File::open(&args.events).map_err(|e| {
        HarnessError::Io(io::Error::new(
            e.kind(),
            format!("{}: {e}", args.events.display()),
        ))
    })?)?;
    let rows = transform_events(&events, &map)?;
    emit(args.out.as_deref(), |w| write_transform_csv(w, &rows))?;
    Ok(ExitCode::SUCCESS)
}

fn interfere(args: InterfereArgs) -> Result<ExitCode, HarnessError> {
    let config = match &args.config {
        Some(path) => experiment_from_json(&read(path)?)?,
        None => ExperimentConfig::default(),
    };
    let phis = args.phis.unwrap_or(PhaseGrid::DEFAULT).values();
    let rows = phase_sweep(&config, &phis)?;
    emit(args.out.as_deref(), |w| write_sweep_csv(w, &rows))?;
    eprintln!(
        "{} phases, visibility {}",
        rows.len(),
        fmt_f64(visibility(&rows))
    );
    Ok(ExitCode::SUCCESS)
}

fn nogo(args: NogoArgs) -> Result<ExitCode, HarnessError> {
    let phis = args.phis.unwrap_or(PhaseGrid::DEFAULT).values();
    let report = no_go_search(&phis, args.resolution)?;
    let json = serde_json::to_string_pretty(&report)?;
    emit(args.out.as_deref(), |w| Ok(writeln!(w, "{json}")?))?;
    eprintln!(
        "{} classical configs: max phase variation {}; amplitude visibility {}",
        report.configs_checked,
        fmt_f64(report.max_classical_variation),
        fmt_f64(report.amplitude_visibility)
    );
    Ok(if report.classical_is_phase_blind() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn check(args: CheckArgs) -> Result<ExitCode, HarnessError> {
    let mut manifest = RunManifest::new("check");
    manifest.seed = args.seed;
    manifest.trials = args.trials;
    manifest.resolution = args.resolution;
    manifest.suite = args.suite.clone();
    manifest.out = args.out.clone();
    if let Some(p) = args.phis {
        manifest.phis = p;
    }
    if let Some(t) = args.interval_tol {
        manifest.tolerances.interval_rel = t;
    }
    if let Some(t) = args.cone_tol {
        manifest.tolerances.cone = t;
    }
    let report = run_suite(&manifest.suite, &CheckContext::from_manifest(&manifest))?;
    let json = report.to_json();
    if let Some(path) = &manifest.out {
        fs::write(path, format!("{json}\n"))?;
    }
    if args.json {
        println!("{json}");
    } else {
        print!("{}", report.to_text());
    }
    Ok(if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Transform(a) => transform(a),
        Command::Interfere(a) => interfere(a),
        Command::Nogo(a) => nogo(a),
        Command::Check(a) => check(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
