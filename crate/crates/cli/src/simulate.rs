use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use copspace::discrete::{k_copwin, StrategyTable, TableFile, DEFAULT_BUDGET};
use copspace::format::Space;
use copspace::game::{new_game, write_trace, AgilitySchedule, CopStrategy, RobberStrategy};
use copspace::strategies::{
    component_graph, GreedyCops, LiftedCops, PretendRobber, RandomCops, RandomRobber, ShadowRobber,
};

use crate::error::CliError;
use crate::source;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RobberKind {
    /// Plays a discrete robber table on the least component it wins.
    Pretend,
    /// Pretend robber on the base of a hatted space, against shadow cops.
    Shadow,
    /// Random walk within the schedule.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CopKind {
    Greedy,
    /// Discrete cop table lifted to the robber's component.
    Lifted,
    Random,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub space: PathBuf,
    #[arg(long, value_enum, default_value = "pretend")]
    pub robber: RobberKind,
    #[arg(long, value_enum, default_value = "greedy")]
    pub cops: CopKind,
    #[arg(long)]
    pub k: usize,
    /// Agility schedule for the random robber: `const:x`, `harmonic:c` or `list:a,b,..`.
    #[arg(long)]
    pub schedule: Option<AgilitySchedule>,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Approach distances to report first hitting times for.
    #[arg(long, value_delimiter = ',')]
    pub eps: Vec<f64>,
    /// Cop table for `--cops lifted`; solved on the fly if absent.
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Trace file; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn robber(a: &SimulateArgs, space: &Space) -> Result<(Box<dyn RobberStrategy>, Option<usize>), CliError> {
    if a.schedule.is_some() && a.robber != RobberKind::Random {
        return Err(CliError::usage("--schedule applies only to --robber random; the others pick their own"));
    }
    Ok(match a.robber {
        RobberKind::Pretend => {
            let r = PretendRobber::new(&space.graph, &space.components, a.k, a.budget)?;
            let c = r.component();
            (Box::new(r), Some(c))
        }
        RobberKind::Shadow => {
            let charts = space
                .charts
                .clone()
                .ok_or_else(|| CliError::usage("--robber shadow needs a space with charts"))?;
            let base = space.base_graph()?;
            let inner = PretendRobber::new(&base, &space.components, a.k, a.budget)?;
            let c = inner.component();
            let tol = space.report.map(|r| r.tolerance);
            let r = ShadowRobber::new(Box::new(inner), &space.graph, charts, base, tol)?;
            (Box::new(r), Some(c))
        }
        RobberKind::Random => {
            let schedule = a.schedule.clone().unwrap_or(AgilitySchedule::Constant(1.0));
            (Box::new(RandomRobber::new(a.seed, schedule)), None)
        }
    })
}

fn cops(a: &SimulateArgs, space: &Space, component: Option<usize>) -> Result<Box<dyn CopStrategy>, CliError> {
    Ok(match a.cops {
        CopKind::Greedy => Box::new(GreedyCops),
        CopKind::Random => Box::new(RandomCops::new(a.seed)),
        CopKind::Lifted => {
            let index = match component {
                Some(c) => c,
                None => PretendRobber::new(&space.graph, &space.components, a.k, a.budget)?.component(),
            };
            let emb = &space.components[index - 1];
            let table = match &a.table {
                Some(path) => {
                    let file: TableFile = serde_json::from_str(&source::read(path)?)?;
                    StrategyTable::from_file(&file)?
                }
                None => k_copwin(&component_graph(emb)?, a.k, a.budget)?.1,
            };
            Box::new(LiftedCops::new(&space.graph, emb, table)?)
        }
    })
}

pub fn run(a: SimulateArgs) -> Result<bool, CliError> {
    let space = source::load_space(&a.space)?;
    let (robber, component) = robber(&a, &space)?;
    let cops = cops(&a, &space, component)?;
    let mut game = new_game(&space.graph, a.k, robber, cops, a.steps, a.eps.clone())?;
    game.set_seed(a.seed);
    let trace = game.run()?;
    match &a.out {
        Some(path) => {
            let f = File::create(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(f);
            write_trace(&trace, &mut w)?;
            w.flush()?;
        }
        None => write_trace(&trace, io::stdout().lock())?,
    }
    let s = trace.summary();
    eprintln!(
        "steps {}, value {}, captured {}",
        s.steps,
        s.value.map_or("none".to_owned(), |v| format!("{v:.6}")),
        s.captured
    );
    for &eps in &a.eps {
        match trace.first_approach(eps) {
            Some(n) => eprintln!("first within {eps}: step {n}"),
            None => eprintln!("first within {eps}: never"),
        }
    }
    Ok(true)
}
