use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::{AgilitySchedule, GameError, GameState, StrategyNotes};
use crate::metric::{PointRef, VertexId};

pub const TRACE_FORMAT: &str = "copspace-trace/1";

/// First line of a trace file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceHeader {
    pub format: String,
    pub k: usize,
    pub robber: String,
    pub cops: String,
    pub schedule: AgilitySchedule,
    pub max_steps: usize,
    #[serde(default)]
    pub capture_eps: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(flatten)]
    pub notes: StrategyNotes,
}

/// One line per completed state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub n: usize,
    pub tau: f64,
    pub robber: PointRef,
    pub cops: Vec<PointRef>,
    pub min_dist: f64,
    /// Running value up to and including this step.
    pub value: f64,
    pub captured: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pretended: Option<Vec<VertexId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shadows: Option<Vec<PointRef>>,
}

impl TraceStep {
    pub fn state(&self) -> GameState {
        GameState {
            n: self.n,
            tau: self.tau,
            robber: self.robber,
            cops: self.cops.clone(),
        }
    }
}

/// Last line of a trace file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub steps: usize,
    pub value: Option<f64>,
    pub captured: bool,
    /// First step at which the cops came within each `capture_eps`.
    pub first_approach: Vec<(f64, Option<usize>)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameTrace {
    pub header: TraceHeader,
    pub steps: Vec<TraceStep>,
}

impl GameTrace {
    pub fn value(&self) -> Option<f64> {
        self.steps.last().map(|s| s.value)
    }

    pub fn captured(&self) -> bool {
        self.steps.last().is_some_and(|s| s.captured)
    }

    /// First step with `min_dist <= eps`.
    pub fn first_approach(&self, eps: f64) -> Option<usize> {
        self.steps.iter().find(|s| s.min_dist <= eps).map(|s| s.n)
    }

    pub fn summary(&self) -> Summary {
        Summary {
            steps: self.steps.last().map_or(0, |s| s.n),
            value: self.value(),
            captured: self.captured(),
            first_approach: self
                .header
                .capture_eps
                .iter()
                .map(|&e| (e, self.first_approach(e)))
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Line {
    Header { header: TraceHeader },
    Summary { summary: Summary },
    Step(TraceStep),
}

/// JSON lines: header, one line per step, summary.
pub fn write_trace<W: Write>(trace: &GameTrace, mut out: W) -> std::io::Result<()> {
    let mut line = |l: &Line| -> std::io::Result<()> {
        serde_json::to_writer(&mut out, l)?;
        out.write_all(b"\n")
    };
    line(&Line::Header {
        header: trace.header.clone(),
    })?;
    for s in &trace.steps {
        line(&Line::Step(s.clone()))?;
    }
    line(&Line::Summary {
        summary: trace.summary(),
    })?;
    Ok(())
}

/// Parse a trace written by [`write_trace`]. The summary line is optional;
/// when present it must agree with the steps.
pub fn read_trace<R: BufRead>(input: R) -> Result<GameTrace, GameError> {
    let mut header = None;
    let mut steps = Vec::new();
    let mut summary = None;
    for (i, line) in input.lines().enumerate() {
        let line = line.map_err(|e| GameError::Trace(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed: Line = serde_json::from_str(&line)
            .map_err(|e| GameError::Trace(format!("line {}: {e}", i + 1)))?;
        match (parsed, header.is_some(), summary.is_some()) {
            (_, _, true) => return Err(GameError::Trace(format!("line {}: after summary", i + 1))),
            (Line::Header { header: h }, false, _) => {
                if h.format != TRACE_FORMAT {
                    return Err(GameError::Trace(format!("unknown format `{}`", h.format)));
                }
                header = Some(h);
            }
            (Line::Step(s), true, _) => steps.push(s),
            (Line::Summary { summary: s }, true, _) => summary = Some(s),
            _ => return Err(GameError::Trace(format!("line {}: header must come first", i + 1))),
        }
    }
    let header = header.ok_or_else(|| GameError::Trace("missing header".into()))?;
    let trace = GameTrace { header, steps };
    if let Some(s) = summary {
        if s != trace.summary() {
            return Err(GameError::Trace("summary disagrees with steps".into()));
        }
    }
    Ok(trace)
}
