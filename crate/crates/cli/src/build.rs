use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Subcommand};
use copspace::construct::{
    attach_hat, build_cylinder, build_top, counterexample_one, required_height, subdivide,
    ComponentEmbedding, HatParams,
};
use copspace::format::{space_to_json, Space};
use copspace::metric::{MetricGraph, VertexId};

use crate::error::CliError;
use crate::source;

#[derive(Debug, Subcommand)]
pub enum BuildCommand {
    /// Finite wedge of rescaled graphs glued at a hub.
    Wedge(WedgeArgs),
    /// A base graph with a hat glued over a subspace.
    Hat(HatArgs),
    /// The cylinder over a graph on its own.
    Cylinder(LayerArgs),
    /// The top over a graph on its own.
    Top(LayerArgs),
}

#[derive(Debug, Args)]
pub struct WedgeArgs {
    /// Comma-separated generator specs or edge-list files.
    #[arg(long, value_delimiter = ',', required = true)]
    pub components: Vec<String>,
    /// Keep only the first N components.
    #[arg(long)]
    pub truncate: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

/// Hat height: `auto` for the required height, or a number.
#[derive(Debug, Clone, Copy)]
pub enum Height {
    Auto,
    Fixed(f64),
}

fn parse_height(s: &str) -> Result<Height, String> {
    if s == "auto" {
        return Ok(Height::Auto);
    }
    match s.parse::<f64>() {
        Ok(h) if h > 0.0 && h.is_finite() => Ok(Height::Fixed(h)),
        _ => Err(format!("`{s}` is not `auto` or a positive number")),
    }
}

#[derive(Debug, Args)]
pub struct HatArgs {
    /// Generator spec, edge-list file or space file.
    #[arg(long)]
    pub base: String,
    /// Comma-separated labels of base vertices under the hat.
    #[arg(long, value_delimiter = ',', required = true)]
    pub subspace: Vec<String>,
    #[arg(long, value_parser = parse_height, default_value = "auto")]
    pub h: Height,
    /// Largest robber step the hat must absorb.
    #[arg(long, default_value_t = 1.0)]
    pub agility: f64,
    #[arg(long, conflicts_with = "tol")]
    pub levels: Option<usize>,
    /// Pick the fewest levels with chart tolerance at most this.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Split each base edge into this many pieces first.
    #[arg(long)]
    pub subdivide: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct LayerArgs {
    #[arg(long)]
    pub base: String,
    #[arg(long)]
    pub h: f64,
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long)]
    pub subdivide: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(cmd: BuildCommand) -> Result<bool, CliError> {
    let (space, out) = match cmd {
        BuildCommand::Wedge(a) => (wedge(&a)?, a.out),
        BuildCommand::Hat(a) => (hat(&a)?, a.out),
        BuildCommand::Cylinder(a) => (layers(&a, false)?, a.out),
        BuildCommand::Top(a) => (layers(&a, true)?, a.out),
    };
    println!("space: {} vertices, {} edges", space.graph.vertex_count(), space.graph.edge_count());
    source::write(&out, &space_to_json(&space))?;
    println!("written to {}", out.display());
    Ok(true)
}

fn wedge(a: &WedgeArgs) -> Result<Space, CliError> {
    let family = a
        .components
        .iter()
        .map(|c| Ok((source::metric_graph(c, a.seed)?, None)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let w = counterexample_one(&family, a.truncate.unwrap_or(family.len()))?;
    for (c, spec) in w.components.iter().zip(&a.components) {
        let ell = c.uniform_edge_length(&w.graph);
        println!(
            "component {} ({spec}): {} vertices, edge length {}",
            c.index,
            c.vertices.len(),
            ell.map_or("mixed".to_owned(), |l| format!("{l:.6}"))
        );
    }
    println!("diameter {:.6}, mesh {:.6}", w.graph.diameter(), w.graph.mesh());
    Ok(Space::from_wedge(w))
}

fn base_graph(arg: &str, seed: u64, parts: Option<usize>) -> Result<(MetricGraph, ComponentEmbedding), CliError> {
    let g = source::metric_graph(arg, seed)?;
    match parts {
        Some(p) => Ok(subdivide(&g, p)?),
        None => {
            let emb = ComponentEmbedding::whole(&g, VertexId(0));
            Ok((g, emb))
        }
    }
}

fn hat(a: &HatArgs) -> Result<Space, CliError> {
    let (base, emb) = base_graph(&a.base, a.seed, a.subdivide)?;
    let mut chosen = BTreeSet::new();
    for label in &a.subspace {
        let v = base
            .vertex_by_label(label)
            .ok_or_else(|| CliError::usage(format!("no base vertex labelled `{label}`")))?;
        chosen.insert(v);
    }
    // subdivision points on edges between chosen vertices join the subspace
    let mut subspace: BTreeSet<VertexId> = chosen.clone();
    for ce in &emb.edges {
        let (a_v, b_v) = (emb.vertices[ce.a as usize], emb.vertices[ce.b as usize]);
        if chosen.contains(&a_v) && chosen.contains(&b_v) {
            for &e in &ce.chain {
                subspace.extend([base.edge(e).u, base.edge(e).v]);
            }
        }
    }
    if !(a.agility > 0.0 && a.agility.is_finite()) {
        return Err(CliError::usage("--agility must be positive"));
    }
    let height = match a.h {
        Height::Auto => required_height(&base, a.agility),
        Height::Fixed(h) => h,
    };
    let mesh = base.mesh();
    let levels = match (a.levels, a.tol) {
        (Some(l), _) => l,
        (None, Some(tol)) => HatParams::levels_for_tolerance(height, mesh, tol).ok_or_else(|| {
            CliError::usage(format!("tolerance {tol} is below twice the mesh {mesh}; try --subdivide"))
        })?,
        (None, None) => HatParams::default_levels(height, mesh, Some(a.agility)),
    };
    let subspace: Vec<VertexId> = subspace.into_iter().collect();
    let params = HatParams {
        height,
        levels,
        agility_max: Some(a.agility),
    };
    let h = attach_hat(&base, None, &subspace, params)?;
    let r = h.report;
    println!("base: {} vertices, diameter {:.6}, mesh {:.6}", base.vertex_count(), base.diameter(), mesh);
    println!("subspace: {} vertices, diameter {:.6}", subspace.len(), r.subspace_diameter);
    println!(
        "height {:.6} (required {:.6}), levels {levels}, level spacing {:.6}",
        r.height,
        r.required_height.unwrap_or(f64::NAN),
        r.level_spacing
    );
    println!("tol {:.6}", r.tolerance);
    if r.guarantee_void {
        println!("warning: height below the required height; the shadow bound is void");
    }
    Ok(Space::from_hat(h, vec![emb]))
}

fn layers(a: &LayerArgs, top: bool) -> Result<Space, CliError> {
    let (base, _) = base_graph(&a.base, a.seed, a.subdivide)?;
    let levels = a
        .levels
        .unwrap_or_else(|| HatParams::default_levels(a.h, base.mesh(), None));
    println!("base: {} vertices, diameter {:.6}, mesh {:.6}", base.vertex_count(), base.diameter(), base.mesh());
    if top {
        let t = build_top(&base, a.h, levels)?;
        println!("levels {levels}, spacing {:.6}, tol {:.6}", t.report.top_spacing, t.report.tolerance);
        Ok(Space::from_hat(t, vec![]))
    } else {
        let c = build_cylinder(&base, a.h, levels)?;
        println!(
            "levels {levels}, spacing {:.6}, l1 law within {:.6}",
            a.h / levels as f64,
            2.0 * base.mesh()
        );
        Ok(Space {
            graph: c.graph,
            charts: Some(c.charts),
            components: Vec::new(),
            hub: None,
            report: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heights() {
        assert!(matches!(parse_height("auto"), Ok(Height::Auto)));
        assert!(matches!(parse_height("2.5"), Ok(Height::Fixed(h)) if h == 2.5));
        assert!(parse_height("0").is_err());
        assert!(parse_height("inf").is_err());
        assert!(parse_height("tall").is_err());
    }
}
