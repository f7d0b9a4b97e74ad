use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use fingersteer_core::eval::{evaluate_trace, sweep_thresholds, uat_suite, EvalError, GridPoint};
use fingersteer_core::{replay_record, SessionConfig, TraceRecord};
use fingersteer_server::report::{metrics_table, sweep_table, uat_table, EvalReport};
use fingersteer_server::{run_session, SessionError};

/// Gesture-steered lane dodging: session server, replay and evaluation.
#[derive(Parser)]
#[command(name = "fingersteer", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Serve one websocket game session.
    Serve {
        #[arg(long)]
        listen: Option<String>,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        trace_out: Option<PathBuf>,
        /// Feed frames to the classifier unmirrored.
        #[arg(long)]
        no_mirror: bool,
        /// Start ticking without waiting for a client.
        #[arg(long)]
        headless: bool,
    },
    /// Re-run a recorded trace and write the regenerated trace.
    Replay {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score a labeled trace, optionally over a grid of filter thresholds.
    Eval {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        config: PathBuf,
        /// JSON array of {"enter_deg", "exit_deg", "debounce_frames"}.
        #[arg(long)]
        sweep: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run the scripted gesture, movement and restart scenarios.
    Uat {
        #[arg(long)]
        config: PathBuf,
    },
}

/// Failures sorted by exit status.
enum Failure {
    /// 1: configuration, bind or I/O on outputs.
    Setup(anyhow::Error),
    /// 2: the trace (or the live client stream) is malformed.
    Input(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Setup(_) => 1,
            Failure::Input(_) => 2,
        }
    }

    fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Setup(e) | Failure::Input(e) => e,
        }
    }
}

fn setup<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Setup(e.into())
}

fn input<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Input(e.into())
}

fn load_config(path: &Path) -> Result<SessionConfig, Failure> {
    SessionConfig::load(path).map_err(setup)
}

fn load_trace(path: &Path) -> Result<TraceRecord, Failure> {
    let file = File::open(path).with_context(|| format!("cannot open trace {}", path.display())).map_err(input)?;
    TraceRecord::read(BufReader::new(file)).with_context(|| format!("trace {}", path.display())).map_err(input)
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())).map_err(setup),
        None => io::stdout().write_all(text.as_bytes()).map_err(setup),
    }
}

fn eval_err(e: EvalError) -> Failure {
    match e {
        EvalError::NoLabels => input(e),
        other => setup(other),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Serve { listen, config, trace_out, no_mirror, headless } => {
            let mut cfg = load_config(&config)?;
            if let Some(addr) = listen {
                cfg.listen_address = addr;
            }
            if trace_out.is_some() {
                cfg.trace_out = trace_out;
            }
            cfg.mirror_input &= !no_mirror;
            cfg.headless |= headless;
            let rt = tokio::runtime::Runtime::new().map_err(setup)?;
            match rt.block_on(run_session(cfg)) {
                Ok(stats) => {
                    eprintln!(
                        "ticks {} missed {} frames {} malformed {}",
                        stats.ticks, stats.missed_ticks, stats.frames, stats.malformed_lines
                    );
                    Ok(())
                }
                Err(e @ SessionError::ProtocolViolation { .. }) => Err(input(e)),
                Err(e) => Err(setup(e)),
            }
        }
        Command::Replay { trace, config, out } => {
            let cfg = load_config(&config)?;
            let rec = load_trace(&trace)?;
            if rec.header.as_ref().is_some_and(|h| h.config != cfg) {
                tracing::warn!("trace header config differs from --config; using --config");
            }
            let log = replay_record(&rec, &cfg).map_err(setup)?;
            write_output(out.as_deref(), &log.record.to_text())
        }
        Command::Eval { trace, config, sweep, report } => {
            let cfg = load_config(&config)?;
            let rec = load_trace(&trace)?;
            let name = trace.display().to_string();
            let (doc, table) = match sweep {
                Some(grid_path) => {
                    let text = std::fs::read_to_string(&grid_path)
                        .with_context(|| format!("cannot read grid {}", grid_path.display()))
                        .map_err(setup)?;
                    let grid: Vec<GridPoint> = serde_json::from_str(&text)
                        .with_context(|| format!("grid {}", grid_path.display()))
                        .map_err(setup)?;
                    let rows = sweep_thresholds(&rec, &cfg, &grid).map_err(eval_err)?;
                    let table = sweep_table(&rows);
                    (EvalReport { trace: name, metrics: None, sweep: Some(rows) }, table)
                }
                None => {
                    let m = evaluate_trace(&rec, &cfg).map_err(eval_err)?;
                    let table = metrics_table(&m);
                    (EvalReport { trace: name, metrics: Some(m), sweep: None }, table)
                }
            };
            let json = serde_json::to_string_pretty(&doc).map_err(setup)? + "\n";
            match report {
                Some(path) => {
                    write_output(Some(&path), &json)?;
                    print!("{table}");
                }
                None => {
                    eprint!("{table}");
                    print!("{json}");
                }
            }
            Ok(())
        }
        Command::Uat { config } => {
            let cfg = load_config(&config)?;
            let r = uat_suite(&cfg).map_err(setup)?;
            print!("{}", uat_table(&r));
            if r.all_passed() {
                Ok(())
            } else {
                Err(setup(anyhow::anyhow!("acceptance scenarios failed")))
            }
        }
    }
}

fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_writer(io::stderr)
        .with_env_filter(tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()))
        .init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage problems count as configuration errors
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error());
            ExitCode::from(f.code())
        }
    }
}
