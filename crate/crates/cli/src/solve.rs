use std::path::PathBuf;

use clap::Args;
use copspace::discrete::{k_copwin, StrategyTable, DEFAULT_BUDGET};

use crate::error::CliError;
use crate::source;

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Generator spec (`petersen`, `cycle:4`, `grid:3x3`, `tree:12:7`, ...).
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    pub gen: Option<String>,
    /// Edge-list or space file; edge lengths are ignored.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Solve for exactly this many cops.
    #[arg(long, conflicts_with = "k_max")]
    pub k: Option<usize>,
    /// Stop searching above this many cops.
    #[arg(long)]
    pub k_max: Option<usize>,
    /// Largest number of game states to allocate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Seed for `tree:n` without its own seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the last solved table here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: SolveArgs) -> Result<bool, CliError> {
    let source = match (&args.gen, &args.graph) {
        (Some(g), _) => g.clone(),
        (None, Some(p)) => p.display().to_string(),
        (None, None) => unreachable!("clap requires a source"),
    };
    let g = source::discrete_graph(&source, args.seed)?;
    println!("graph: {} vertices, {} edges", g.vertex_count(), g.edge_count());
    let range = match args.k {
        Some(0) => return Err(CliError::usage("--k must be at least 1")),
        Some(k) => k..=k,
        None => 1..=args.k_max.unwrap_or(g.vertex_count()),
    };
    let mut last: Option<StrategyTable> = None;
    let mut number = None;
    for k in range {
        let (win, table) = k_copwin(&g, k, args.budget)?;
        println!("k = {k}: {}", if win { "cops win" } else { "robber wins" });
        last = Some(table);
        if win {
            number = Some(k);
            break;
        }
    }
    if args.k.is_none() {
        match number {
            Some(c) => println!("cop number: {c}"),
            None => println!("cop number: > {}", args.k_max.unwrap_or(0)),
        }
    }
    if let (Some(out), Some(table)) = (&args.out, &last) {
        source::write(out, &serde_json::to_string(&table.to_file())?)?;
        println!("table for k = {} written to {}", table.cop_count(), out.display());
    }
    Ok(true)
}
