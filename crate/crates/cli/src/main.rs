mod cache;
mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ohba_core::choosability::SearchBudget;
use ohba_core::counting::DEFAULT_SEED;

use cache::Cache;
use commands::{Failure, Outcome};

/// Exact list coloring of K_p ∨ K_{a,b} and generalized Ohba numbers.
///
/// Exit codes: 0 success or colorable, 1 uncolorable or not choosable,
/// 2 usage or input error, 3 refused for budget.
#[derive(Debug, Parser)]
#[command(name = "ohba", version)]
struct Cli {
    /// JSON-lines result cache.
    #[arg(long, global = true, env = "OHBA_CACHE_PATH")]
    cache: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct BudgetArgs {
    /// Most canonical W ∪ X list assignments a search may enumerate.
    #[arg(long, default_value_t = SearchBudget::default().max_assignments)]
    max_assignments: u64,
    /// Most branch-and-bound nodes a search may spend on covers.
    #[arg(long, default_value_t = SearchBudget::default().max_cover_nodes)]
    max_nodes: u64,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget { max_assignments: self.max_assignments, max_cover_nodes: self.max_nodes }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TauMethod {
    /// Exact only when the closed-form bounds meet; refuses otherwise.
    Formula,
    /// Best interval from all closed-form bounds.
    Sandwich,
    /// Exhaustive search, falling back to the sandwich when refused.
    Search,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LemmaSet {
    All,
    Weighted,
    Disjoint,
    Star,
    Tightness,
}

#[derive(Debug, Clone, Args)]
pub struct ConstructArgs {
    /// folklore, block-transversal, partition-divisible, partition-remainder (or 1, 4, 6, 7).
    #[arg(long)]
    thm: String,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    l: Option<u32>,
    #[arg(long)]
    a: Option<u32>,
    #[arg(long)]
    b: u64,
    /// List size of the folklore construction (same as --a there).
    #[arg(long)]
    k: Option<u32>,
    /// Write graph.txt, lists.txt and spec.json here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a graph is colorable from a list assignment.
    Check {
        /// Use K_p ∨ K_{a,b}.
        #[arg(long, num_args = 3, value_names = ["P", "A", "B"], required_unless_present = "graph", conflicts_with = "graph")]
        join: Option<Vec<usize>>,
        /// Graph file (`join p a b`, or `n` plus `e u v` lines).
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        lists: PathBuf,
    },
    /// Decide whether K_p ∨ K_{a,b} is k-choosable.
    Choosable {
        p: usize,
        a: usize,
        b: usize,
        k: usize,
        /// Skip closed-form certificates and constructions.
        #[arg(long)]
        search_only: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// The generalized Ohba number τ_s(a,b).
    Tau {
        s: u32,
        a: u32,
        b: u64,
        #[arg(long, value_enum, default_value_t = TauMethod::Sandwich)]
        method: TauMethod,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Conjectured b-intervals for τ_s(s+2, b) = l and what is certified about them.
    Scan {
        s: u32,
        #[arg(long, default_value_t = 3)]
        l_max: u32,
        /// Skip the exhaustive endpoint checks.
        #[arg(long)]
        no_search: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Generate an adversarial list assignment.
    Construct(ConstructArgs),
    /// Generate an adversarial list assignment and confirm it is uncolorable.
    Verify(ConstructArgs),
    /// Tabulate every bound on τ_s(a,b) over a range of b.
    Bounds {
        #[arg(long)]
        a: u32,
        #[arg(long, default_value_t = 0)]
        s: u32,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Least b for which K_p ∨ K_{a,b} is not k-choosable.
    Critical {
        p: usize,
        a: usize,
        k: usize,
        /// Stop looking beyond this b.
        #[arg(long, default_value_t = u64::MAX)]
        cap: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// χ_ℓ(K_p ∨ K_{a,b}) - χ(K_p ∨ K_{a,b}).
    Deficiency {
        p: usize,
        a: usize,
        b: usize,
        #[arg(long)]
        search_only: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check the counting inequalities on sweeps and random instances; prints JSON lines.
    Lemmas {
        #[arg(long, value_enum, default_value_t = LemmaSet::All)]
        which: LemmaSet,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random instances per property and s.
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

impl Command {
    /// Whether the output depends only on the arguments and is cheap to store.
    fn cacheable(&self) -> bool {
        !matches!(self, Command::Check { .. } | Command::Construct(_) | Command::Lemmas { .. })
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let key = format!("{:?} format={:?}", cli.command, cli.format);
    let mut cache = match (&cli.cache, cli.no_cache || !cli.command.cacheable()) {
        (Some(path), false) => Some(Cache::open(path.clone())),
        _ => None,
    };
    if let Some(hit) = cache.as_ref().and_then(|c| c.get(&key)) {
        log::info!("cache hit for {key}");
        print!("{}", hit.rendered);
        let _ = std::io::stdout().flush();
        return ExitCode::from(hit.exit_code);
    }
    match commands::run(&cli.command, cli.format) {
        Ok(Outcome { text, code, result }) => {
            print!("{text}");
            let _ = std::io::stdout().flush();
            if let Some(c) = cache.as_mut().filter(|_| code <= 1) {
                c.put(key, result, text, code);
            }
            ExitCode::from(code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Refused(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(3)
        }
    }
}
