mod cache;
mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use sha2::{Digest, Sha256};

use cache::{cache_key, Cache};
use commands::{planned_dim, CmdError, Command, CONJECTURAL_BANNER};
use render::{render, Format};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "gcart", version, about = "Graded Cartan matrices, Shapovalov determinants and their invariants")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Cache directory; caching is off when neither this nor GCART_CACHE_DIR is set
    #[arg(long, env = "GCART_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads (defaults to available parallelism)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Skip the size guard and recompute even when cached
    #[arg(long, global = true)]
    force: bool,
    /// Largest matrix dimension built without --force
    #[arg(long, default_value_t = 2000, global = true)]
    max_dim: u128,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let mut cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match execute(&mut cli) {
        Ok(code) => code,
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CmdError::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILED)
        }
    }
}

fn execute(cli: &mut Cli) -> Result<ExitCode, CmdError> {
    if let Some(n) = cli.workers {
        if n == 0 {
            return Err(CmdError::Usage("--workers must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CmdError::Compute(e.to_string()))?;
    }
    if let Command::Snf(a) = &mut cli.command {
        let bytes = std::fs::read(&a.input).map_err(|e| CmdError::Usage(format!("{}: {e}", a.input.display())))?;
        a.input_hash = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
    }
    if let Some(dim) = planned_dim(&cli.command)? {
        if dim > cli.max_dim && !cli.force {
            return Err(CmdError::Usage(format!(
                "matrix dimension {dim} exceeds the limit {}; pass --force to build it anyway",
                cli.max_dim
            )));
        }
    }
    if matches!(cli.command, Command::Twisted(_)) {
        eprintln!("{CONJECTURAL_BANNER}");
    }

    let cache = match &cli.cache_dir {
        Some(dir) => Some(Cache::open(dir).map_err(|e| CmdError::Usage(format!("cache dir {}: {e}", dir.display())))?),
        None => None,
    };
    let mut params = serde_json::to_value(&cli.command).expect("commands serialize");
    if let Command::Snf(_) = &cli.command {
        // the path itself is irrelevant once the content is hashed
        params["snf"]["input"] = serde_json::Value::Null;
    }
    let key = cache_key(cli.command.name(), &params);
    let cached = if cli.force { None } else { cache.as_ref().and_then(|c| c.get(&key)) };
    let artifact = match cached {
        Some(a) => a,
        None => {
            let a = commands::run(&cli.command)?;
            if let Some(c) = &cache {
                if let Err(e) = c.put(&key, &a) {
                    eprintln!("warning: could not write cache entry: {e}");
                }
            }
            a
        }
    };
    let text = render(&artifact, cli.format);
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
    Ok(if artifact.ok { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAILED) })
}
