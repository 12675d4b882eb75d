use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wreathgen::cache::EulerianCache;
use wreathgen::config::{self, BoundDecl, IsoDecl, ModeName};
use wreathgen::{CliError, Context, Report};
use wreathgen_core::schemes::Scheme;
use wreathgen_core::DEFAULT_DEGREE_CAP;

#[derive(Parser)]
#[command(name = "wf", version, about = "Wreath-tower generator sets and their verification")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// JSON config; the built-in catalog is always available.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Also write the report as JSON to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Largest degree that is flattened to a permutation group.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    cap: usize,
    /// Overrides the mode of every run.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeName>,
}

#[derive(Subcommand)]
enum Command {
    /// Degree and order of every level of a tower.
    Build {
        #[arg(long)]
        tower: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
        /// Skip chain-order checks of flattenable levels.
        #[arg(long)]
        no_check: bool,
    },
    /// Emit a generator set.
    Gens {
        #[arg(long)]
        tower: String,
        #[arg(long, value_parser = parse_scheme)]
        scheme: Scheme,
        #[arg(long)]
        depth: Option<usize>,
        /// Directory for `.perms` and `.json` files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Execute the runs of the config, or one of them.
    Verify {
        #[arg(long)]
        run: Option<String>,
    },
    /// Rebracketing check A⊛(B≀C) against (A⊛B)⊛C.
    Iso {
        #[arg(long, requires_all = ["b", "c"])]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        c: Option<String>,
    },
    /// Lower bound on generators of A^N ≀ B.
    Bound {
        #[arg(long, requires_all = ["copies", "b"])]
        a: Option<String>,
        #[arg(long)]
        copies: Option<u64>,
        #[arg(long)]
        b: Option<String>,
        /// File caching generating-tuple counts across invocations.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Standing hypotheses of a group or of every level of a tower.
    Hypotheses {
        #[arg(long, conflicts_with = "tower")]
        group: Option<String>,
        #[arg(long)]
        tower: Option<String>,
    },
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    Scheme::parse(s).ok_or_else(|| format!("unknown scheme '{s}' (dgen, threegen, special, theoremB)"))
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let ctx = Context {
        config: config::load(cli.global.config.as_deref())?,
        cap: cli.global.cap,
        mode: cli.global.mode.map(Into::into),
    };
    match cli.command {
        Command::Build { tower, depth, no_check } => ctx.build(tower.as_deref(), depth, !no_check),
        Command::Gens { tower, scheme, depth, out } => ctx.gens(&tower, scheme, depth, out.as_deref()),
        Command::Verify { run } => ctx.verify(run.as_deref()),
        Command::Iso { a, b, c } => {
            let triples = match (a, b, c) {
                (Some(a), Some(b), Some(c)) => vec![IsoDecl { a, b, c }],
                _ => ctx.config.iso.clone(),
            };
            ctx.iso(&triples)
        }
        Command::Bound { a, copies, b, cache } => {
            let items = match (a, copies, b) {
                (Some(a), Some(copies), Some(b)) => vec![BoundDecl { a, copies, b }],
                _ => ctx.config.bounds.clone(),
            };
            let mut cache = match cache {
                Some(p) => EulerianCache::open(&p)?,
                None => EulerianCache::in_memory(),
            };
            ctx.bound(&items, &mut cache)
        }
        Command::Hypotheses { group, tower } => ctx.hypotheses(group.as_deref(), tower.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.global.json.clone();
    match run(cli) {
        Ok(report) => {
            print!("{}", report.render());
            if let Some(path) = json {
                if let Err(e) = std::fs::write(&path, report.to_json()) {
                    eprintln!("wf: writing {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("wf: {e}");
            ExitCode::from(2)
        }
    }
}
