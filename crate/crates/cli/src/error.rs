use std::fmt;
use std::process::ExitCode;

use copspace::construct::ConstructionError;
use copspace::discrete::SolverError;
use copspace::format::FormatError;
use copspace::game::{GameError, StrategyError};
use copspace::metric::MetricError;

/// Exit status for a failed invariant or an illegal move.
pub const INVARIANT: u8 = 1;
pub const USAGE: u8 = 2;
pub const BUDGET: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: USAGE,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn solver_code(e: &SolverError) -> u8 {
    match e {
        SolverError::BudgetExceeded { .. } => BUDGET,
        _ => USAGE,
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        CliError {
            code: solver_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<StrategyError> for CliError {
    fn from(e: StrategyError) -> Self {
        let code = match &e {
            StrategyError::Solver(s) => solver_code(s),
            _ => USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        let code = match &e {
            GameError::IllegalMove { .. } | GameError::OffSpace { .. } | GameError::WrongCopCount { .. } => {
                INVARIANT
            }
            GameError::Strategy {
                source: StrategyError::Solver(s),
                ..
            } => solver_code(s),
            _ => USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::usage(e.to_string())
            }
        }
    )*};
}

usage_from!(ConstructionError, FormatError, MetricError, std::io::Error, serde_json::Error);
