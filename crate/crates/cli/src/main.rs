use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use catca::check::SuiteParams;
use catca::error::{Error, Result};
use catca::group::FiniteSubset;
use catca::json::{group_elem_from_json, group_from_json};
use catca_cli::demo::cmd_demo;
use catca_cli::run::{parse_initial, render_jsonl, render_pgm, render_text, simulate, Machine};
use catca_cli::{cmd_check, cmd_check_input, exit_code_for};

/// Cellular automata as morphisms: simulation, law checking, and demos.
#[derive(Parser)]
#[command(name = "catca", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an automaton on a configuration and emit one frame per step.
    Run(RunArgs),
    /// Run law-check suites and stream one JSON report per line.
    Check(CheckArgs),
    /// Write a named demo's artifacts.
    Demo(DemoArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Automaton definition file (JSON).
    #[arg(long, conflicts_with = "inline", required_unless_present = "inline")]
    ca: Option<PathBuf>,
    /// Automaton definition given inline as JSON.
    #[arg(long)]
    inline: Option<String>,
    /// Optional group definition file; must match the automaton's universe.
    #[arg(long)]
    group: Option<PathBuf>,
    /// Initial configuration file (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Number of steps.
    #[arg(long, default_value_t = 0)]
    steps: usize,
    /// Output window: ball radius around the identity.
    #[arg(long, default_value_t = 3)]
    radius: usize,
    /// Output window: explicit JSON array of cells (overrides --radius).
    #[arg(long)]
    window: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Output directory; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Pgm,
    Json,
}

#[derive(Args)]
struct CheckArgs {
    /// Suite name, or "all". With --input: equivariance, extract, uniform.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 2026)]
    seed: u64,
    /// Override the per-suite default case count.
    #[arg(long)]
    cases: Option<u64>,
    /// Ball radius for pointwise checks over infinite universes.
    #[arg(long, default_value_t = 3)]
    radius: usize,
    /// Check a user-supplied realized morphism file instead of sampling.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct DemoArgs {
    /// One of: rule90, rule110, subsample, weakprod.
    name: String,
    /// Output directory.
    #[arg(long, default_value = "demos")]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => run(args),
        Command::Check(args) => check(args),
        Command::Demo(args) => demo(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err) as u8)
        }
    }
}

fn read_json(path: &PathBuf) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_artifact(out: &Option<PathBuf>, name: &str, bytes: &[u8]) -> Result<()> {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)
                .map_err(|e| Error::Parse(format!("cannot create {}: {e}", dir.display())))?;
            let path = dir.join(name);
            fs::write(&path, bytes)
                .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
        }
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(bytes)
                .map_err(|e| Error::Parse(format!("stdout: {e}")))?;
        }
    }
    Ok(())
}

fn run(args: RunArgs) -> Result<ExitCode> {
    let machine_json = match (&args.ca, &args.inline) {
        (Some(path), None) => read_json(path)?,
        (None, Some(text)) => serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("inline automaton: {e}")))?,
        _ => return Err(Error::Parse("exactly one of --ca and --inline".into())),
    };
    let machine = Machine::parse(&machine_json)?;
    if let Some(group_path) = &args.group {
        let pinned = group_from_json(&read_json(group_path)?)?;
        if &pinned != machine.universe() {
            return Err(Error::GroupMismatch);
        }
    }
    let (config, default) = parse_initial(
        machine.universe(),
        machine.source_alphabet(),
        &read_json(&args.config)?,
    )?;
    let window = match &args.window {
        Some(text) => {
            let v: Value =
                serde_json::from_str(text).map_err(|e| Error::Parse(format!("window: {e}")))?;
            let cells = v
                .as_array()
                .ok_or_else(|| Error::Parse("window must be a JSON array of cells".into()))?
                .iter()
                .map(|cell| group_elem_from_json(machine.universe(), cell))
                .collect::<Result<Vec<_>>>()?;
            FiniteSubset::new(machine.universe().clone(), cells)?
        }
        None => machine.universe().ball(args.radius),
    };
    let frames = simulate(&machine, config, default, args.steps, &window)?;
    let (name, bytes) = match args.format {
        Format::Text => ("run.txt", render_text(&frames)?.into_bytes()),
        Format::Pgm => ("run.pgm", render_pgm(&frames)?),
        Format::Json => ("run.jsonl", render_jsonl(&frames)?.into_bytes()),
    };
    write_artifact(&args.out, name, &bytes)?;
    Ok(ExitCode::SUCCESS)
}

fn check(args: CheckArgs) -> Result<ExitCode> {
    let (stream, all_pass) = match &args.input {
        Some(path) => {
            let realized = catca::json::realized_from_json(&read_json(path)?)?;
            cmd_check_input(&args.suite, &realized, args.seed)?
        }
        None => {
            let params = SuiteParams {
                seed: args.seed,
                cases: args.cases,
                radius: args.radius,
            };
            cmd_check(&args.suite, &params)?
        }
    };
    print!("{stream}");
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn demo(args: DemoArgs) -> Result<ExitCode> {
    let artifacts = cmd_demo(&args.name)?;
    for (name, bytes) in artifacts {
        write_artifact(&Some(args.out.clone()), &name, &bytes)?;
        eprintln!("wrote {}", args.out.join(&name).display());
    }
    Ok(ExitCode::SUCCESS)
}
