use std::io::BufReader;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use copspace::game::{read_trace, GameTrace};
use copspace::verify::{
    check_distance_floor, check_ell, check_eps3, check_hei, check_legality, check_metric,
    check_pret, check_sce, CheckReport,
};

use crate::error::CliError;
use crate::source;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    /// Triangle inequality, symmetry and geodesics on sampled points.
    Metric,
    /// Chart height law on the base and cylinder.
    Hei,
    /// Projection shortens sampled paths below the top.
    Ell,
    /// Moves within budget; recorded distances consistent.
    Legality,
    /// Pretended positions near the cops and adjacent step to step.
    Pret,
    /// Every min distance at least `--floor`.
    Floor,
    /// Shadow cops dominate the projections of the real ones.
    Sce,
    /// Real cops never much closer than a third of the shadows.
    Eps3,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub space: PathBuf,
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Checks to run; by default whatever the inputs support.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub checks: Vec<CheckKind>,
    /// Error budget; defaults to the trace header, then the space report.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub floor: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Print reports as JSON lines.
    #[arg(long)]
    pub json: bool,
}

fn default_checks(a: &VerifyArgs, trace: Option<&GameTrace>, has_charts: bool) -> Vec<CheckKind> {
    let Some(t) = trace else {
        let mut v = vec![CheckKind::Metric];
        if has_charts {
            v.extend([CheckKind::Hei, CheckKind::Ell]);
        }
        return v;
    };
    let mut v = vec![CheckKind::Legality];
    if t.steps.iter().any(|s| s.pretended.is_some()) {
        v.push(CheckKind::Pret);
    }
    if t.steps.iter().any(|s| s.shadows.is_some()) {
        v.extend([CheckKind::Sce, CheckKind::Eps3]);
    }
    if a.floor.is_some() {
        v.push(CheckKind::Floor);
    }
    v
}

pub fn run(a: VerifyArgs) -> Result<bool, CliError> {
    let space = source::load_space(&a.space)?;
    let trace = match &a.trace {
        Some(path) => {
            let f = std::fs::File::open(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            let t = read_trace(BufReader::new(f)).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            let foreign = t
                .steps
                .iter()
                .flat_map(|s| std::iter::once(&s.robber).chain(&s.cops))
                .any(|p| !space.graph.contains(*p));
            if foreign {
                return Err(CliError::usage("trace positions do not belong to this space"));
            }
            Some(t)
        }
        None => None,
    };
    let checks = if a.checks.is_empty() {
        default_checks(&a, trace.as_ref(), space.charts.is_some())
    } else {
        a.checks.clone()
    };
    let tol = a
        .tol
        .or_else(|| trace.as_ref().and_then(|t| t.header.notes.tol))
        .or_else(|| space.report.map(|r| r.tolerance));
    let need_tol = || tol.ok_or_else(|| CliError::usage("no tolerance in the trace or space; pass --tol"));
    let need_trace = |kind: CheckKind| {
        trace
            .as_ref()
            .ok_or_else(|| CliError::usage(format!("check {kind:?} needs --trace").to_lowercase()))
    };
    let mut all = true;
    for kind in checks {
        let g = &space.graph;
        let report: CheckReport = match kind {
            CheckKind::Metric => check_metric(g, a.samples, a.seed),
            CheckKind::Hei => check_hei(&space, need_tol()?),
            CheckKind::Ell => check_ell(&space, a.samples.min(200), a.seed, need_tol()?),
            CheckKind::Legality => check_legality(need_trace(kind)?, g),
            CheckKind::Pret => check_pret(need_trace(kind)?, g, &space.components),
            CheckKind::Floor => {
                let floor = a.floor.ok_or_else(|| CliError::usage("check floor needs --floor"))?;
                check_distance_floor(need_trace(kind)?, floor)
            }
            CheckKind::Sce => check_sce(need_trace(kind)?, &space, need_tol()?),
            CheckKind::Eps3 => check_eps3(need_trace(kind)?, g, need_tol()?),
        };
        all &= report.passed;
        if a.json {
            println!("{}", serde_json::to_string(&report)?);
        } else {
            println!(
                "{:<10} {}  worst margin {:.3e}  checked {}{}",
                report.name,
                if report.passed { "PASS" } else { "FAIL" },
                report.worst_margin,
                report.checked,
                report.first_failure.map(|f| format!("  first failure: {f}")).unwrap_or_default()
            );
        }
    }
    Ok(all)
}
