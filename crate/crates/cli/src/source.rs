use std::fs;
use std::path::Path;

use copspace::discrete::{parse_edge_list, DiscreteGraph, GraphSpec};
use copspace::format::{parse_space, Space};
use copspace::metric::MetricGraph;

use crate::error::CliError;

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn load_space(path: &Path) -> Result<Space, CliError> {
    parse_space(&read(path)?).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

/// A generator spec, or a file holding an edge list or a space.
pub fn metric_graph(arg: &str, seed: u64) -> Result<MetricGraph, CliError> {
    if let Ok(spec) = arg.parse::<GraphSpec>() {
        return Ok(spec.build(seed)?.to_metric(1.0)?);
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(CliError::usage(format!(
            "`{arg}` is neither a generator (path:n, cycle:n, complete:n, grid:RxC, tree:n[:seed], petersen) nor a file"
        )));
    }
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        return Ok(load_space(path)?.graph);
    }
    let list = parse_edge_list(&text).map_err(|e| CliError::usage(format!("{arg}: {e}")))?;
    Ok(list.to_metric()?)
}

pub fn discrete_graph(arg: &str, seed: u64) -> Result<DiscreteGraph, CliError> {
    if let Ok(spec) = arg.parse::<GraphSpec>() {
        return Ok(spec.build(seed)?);
    }
    Ok(DiscreteGraph::from_metric(&metric_graph(arg, seed)?)?)
}
