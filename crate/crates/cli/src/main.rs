use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kemeny_cli::run::{table_row, RunError};
use kemeny_cli::{generate_profile, parse_instance, render, run, Action, Flags, Model};
use kemeny_core::fixtures::label_for;
use kemeny_core::{Candidates, ManipulationInstance, Ranking};

#[derive(Parser)]
#[command(
    name = "kemeny",
    version,
    about = "Manipulating Kemeny scores: solvers, oracles and instance generation",
    args_conflicts_with_subcommands = true,
    subcommand_negates_reqs = true
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    solve: SolveArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance file to stdout.
    Gen(GenArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// pks, dollar, rdel, swap, cdel-k0, cdel-single, or oracle:<pks|dollar|rdel|swap|cdel>
    #[arg(required = true)]
    action: Option<Action>,
    /// Instance file; optional with --glob.
    file: Option<PathBuf>,
    /// Emit one JSON record per line.
    #[arg(long)]
    json: bool,
    /// Fail on a bad witness and cross-check against the counterpart solver or oracle.
    #[arg(long)]
    verify: bool,
    /// Recorded in the output; solvers are deterministic.
    #[arg(long)]
    seed: Option<u64>,
    /// Vertex cap for cdel-single; candidate and ranking cap for oracles.
    #[arg(long)]
    cap: Option<usize>,
    /// Solve every file matching the pattern.
    #[arg(long)]
    glob: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelName {
    Uniform,
    Mallows,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "uniform")]
    model: ModelName,
    /// Mallows dispersion in (0, 1].
    #[arg(long, default_value_t = 0.5)]
    phi: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    k: u64,
    #[arg(long, default_value_t = 0)]
    budget: u64,
}

fn generate(args: &GenArgs) -> Result<String, String> {
    if args.m == 0 {
        return Err("--m must be at least 1".into());
    }
    let model = match args.model {
        ModelName::Uniform => Model::Uniform,
        ModelName::Mallows => Model::Mallows { phi: args.phi },
    };
    let profile = generate_profile(args.m, args.n, model, args.seed)?;
    let candidates = Candidates::new((0..args.m).map(label_for)).map_err(|e| e.to_string())?;
    let instance = ManipulationInstance::with_unit_costs(
        candidates,
        profile,
        Ranking::identity(args.m),
        args.budget,
        args.k,
    )
    .map_err(|e| e.to_string())?;
    Ok(format!(
        "# generated: m={} n={} model={} seed={}\n{}",
        args.m,
        args.n,
        match model {
            Model::Uniform => "uniform".to_string(),
            Model::Mallows { phi } => format!("mallows phi={phi}"),
        },
        args.seed,
        render(&instance)
    ))
}

enum FileError {
    Read(std::io::Error),
    Parse(kemeny_cli::ParseError),
    Run(RunError),
}

impl std::fmt::Display for FileError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FileError::Read(e) => write!(f, "{e}"),
            FileError::Parse(e) => write!(f, "{e}"),
            FileError::Run(e) => write!(f, "{e}"),
        }
    }
}

/// Exit code for one file: 0 YES, 1 NO, 2 error. The output line is written
/// under the stdout lock so concurrent workers never interleave.
fn solve_file(path: &Path, args: &SolveArgs, action: Action, out: &Mutex<std::io::Stdout>) -> u8 {
    let flags = Flags {
        verify: args.verify,
        cap: args.cap,
        seed: args.seed,
    };
    let result = std::fs::read_to_string(path)
        .map_err(FileError::Read)
        .and_then(|text| parse_instance(&text).map_err(FileError::Parse))
        .and_then(|inst| run(action, &inst, &flags).map_err(FileError::Run));
    let name = path.display().to_string();
    match result {
        Ok(mut record) => {
            record.file = Some(name);
            let line = if args.json {
                serde_json::to_string(&record).expect("records serialize")
            } else {
                table_row(&record)
            };
            let _ = writeln!(out.lock().unwrap(), "{line}");
            record.exit_code() as u8
        }
        Err(err) => {
            eprintln!("kemeny: {name}: {err}");
            if args.json {
                let line = serde_json::json!({
                    "file": name,
                    "action": action.to_string(),
                    "error": err.to_string(),
                });
                let _ = writeln!(out.lock().unwrap(), "{line}");
            }
            2
        }
    }
}

fn solve_all(args: &SolveArgs) -> Result<u8, String> {
    let action = args.action.expect("clap requires the action");
    let mut files: Vec<PathBuf> = args.file.iter().cloned().collect();
    if let Some(pattern) = &args.glob {
        let mut matched = glob::glob(pattern)
            .map_err(|e| format!("bad --glob pattern: {e}"))?
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        matched.sort();
        files.extend(matched);
    }
    if files.is_empty() {
        return Err(match &args.glob {
            Some(p) => format!("no files match `{p}`"),
            None => "an instance file or --glob is required".into(),
        });
    }

    let out = Mutex::new(std::io::stdout());
    let next = AtomicUsize::new(0);
    let worst = AtomicUsize::new(0);
    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(files.len());
    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(path) = files.get(i) else { break };
                let code = solve_file(path, args, action, &out);
                worst.fetch_max(code as usize, Ordering::Relaxed);
            });
        }
    });
    Ok(worst.into_inner() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Some(Command::Gen(args)) => generate(args).map(|text| {
            print!("{text}");
            0
        }),
        None => solve_all(&cli.solve),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("kemeny: {msg}");
            ExitCode::from(2)
        }
    }
}
