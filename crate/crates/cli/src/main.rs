use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::{Failure, Output, Status};

/// Default seed so bare invocations are reproducible.
const DEFAULT_SEED: u64 = 20240521;

#[derive(Parser, Debug)]
#[command(
    name = "hullforge",
    version,
    about = "Hull dimensions and LCD codes up to monomial equivalence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for every randomized search.
    #[arg(long, global = true, env = "HULLFORGE_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Codewords an exhaustive distance or hull enumeration may visit.
    #[arg(long, global = true, default_value_t = hullforge::DEFAULT_DISTANCE_BUDGET)]
    budget_distance: u128,

    /// Square classes (times codes, for scans) a purity scan may visit.
    #[arg(long, global = true, default_value_t = hullforge::purelcd::DEFAULT_SCAN_BUDGET)]
    budget_scan: u128,

    /// Random scalings tried before the deterministic LCD sweep.
    #[arg(long, global = true, default_value_t = hullforge::hulltune::DEFAULT_MAX_TRIALS)]
    budget_trials: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Directory for emitted code and witness files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    /// JSON with a `schema_version` field.
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hull dimension, Gram ranks and LCD/self-orthogonality flags.
    Hull { file: PathBuf },
    /// An equivalent code with hull dimension one lower.
    Reduce { file: PathBuf },
    /// Equivalent codes of every hull dimension down to 0.
    Chain { file: PathBuf },
    /// An equivalent code with a one-dimensional hull.
    Onedim { file: PathBuf },
    /// Whether every monomially equivalent code is LCD.
    Purelcd { file: PathBuf },
    /// The [2k, k] code [I_k : I_k] over GF(q), checked for purity.
    Family { q: u32, k: usize },
    /// Scan standard-form [n, k] codes over GF(2^t) for pure LCD codes.
    Scan2t {
        q: u32,
        n: usize,
        k: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Codes drawn in sampled mode.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Entanglement-assisted quantum code parameters for hull budget `l`.
    Eaqecc { file: PathBuf, l: usize },
    /// Replay a witness file against a code file.
    Verify { code: PathBuf, witness: PathBuf },
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let budgets = commands::Budgets {
        distance: cli.budget_distance,
        scan: cli.budget_scan,
        trials: cli.budget_trials,
    };
    let seed = cli.seed;
    match &cli.command {
        Command::Hull { file } => commands::hull(file, &budgets),
        Command::Reduce { file } => commands::reduce(file, seed, &budgets),
        Command::Chain { file } => commands::chain(file, seed, &budgets),
        Command::Onedim { file } => commands::onedim(file, seed, &budgets),
        Command::Purelcd { file } => commands::purelcd(file, &budgets),
        Command::Family { q, k } => commands::family(*q, *k, &budgets),
        Command::Scan2t {
            q,
            n,
            k,
            mode,
            samples,
        } => {
            let mode = match mode {
                Mode::Exhaustive => hullforge::ScanMode::Exhaustive,
                Mode::Sampled => hullforge::ScanMode::Sampled {
                    samples: *samples,
                    seed,
                },
            };
            commands::scan2t(*q, *n, *k, mode, &budgets)
        }
        Command::Eaqecc { file, l } => commands::eaqecc(file, *l, &budgets),
        Command::Verify { code, witness } => commands::verify(code, witness, &budgets),
    }
}

fn write_files(dir: &Path, files: &[(String, String)]) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
    for (name, text) in files {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|e| Failure::io(&path, e))?;
    }
    if !files.is_empty() {
        eprintln!("wrote {} file(s) to {}", files.len(), dir.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        if let Some(dir) = &cli.out {
            write_files(dir, &out.files)?;
        }
        Ok(out)
    });
    match result {
        Ok(out) => {
            let text = match cli.format {
                Format::Human => out.human,
                Format::Structured => {
                    serde_json::to_string(&out.structured).expect("JSON values serialize") + "\n"
                }
            };
            if let Err(e) = std::io::stdout().lock().write_all(text.as_bytes()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            match out.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::NoWitness => ExitCode::from(1),
            }
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
