//! Exit-code classification for everything the commands can fail with.
//!
//! Validation covers anything the user can fix by changing flags, config,
//! or input files: parse failures, impossible parameter combinations,
//! malformed CSV. Runtime covers failures of the work itself: IO while
//! writing, degenerate geometry discovered mid-pipeline, clustering that
//! cannot produce the requested number of groups.

use pbc_core::cluster::ClusterError;
use pbc_core::eval::EvalError;
use pbc_core::graph::GraphError;
use pbc_core::io::IoError;
use pbc_core::path::PathError;
use pbc_core::pca::PcaError;
use pbc_core::synth::SynthError;

pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(msg) | CliError::Runtime(msg) => f.write_str(msg),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Malformed { .. } | IoError::Cloud(_) => CliError::Validation(e.to_string()),
            IoError::Io(_) => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<SynthError> for CliError {
    fn from(e: SynthError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<PcaError> for CliError {
    fn from(e: PcaError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<PathError> for CliError {
    fn from(e: PathError) -> Self {
        match e {
            PathError::InvalidConstraint(_) => CliError::Validation(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::InvalidConfig(_) | GraphError::TooFewPoints(_) => {
                CliError::Validation(e.to_string())
            }
            GraphError::DegenerateCloud(..) => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<ClusterError> for CliError {
    fn from(e: ClusterError) -> Self {
        match e {
            ClusterError::InvalidConfig(_) | ClusterError::UnknownEngine { .. } => {
                CliError::Validation(e.to_string())
            }
            ClusterError::Graph(g) => CliError::from(g),
            ClusterError::Path(p) => CliError::from(p),
            ClusterError::TooFewDistinctVectors { .. } => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::LengthMismatch { .. } | EvalError::BadInput(_) => {
                CliError::Validation(e.to_string())
            }
            EvalError::EmptyScoredSet => CliError::Runtime(e.to_string()),
            EvalError::Synth(s) => CliError::from(s),
            EvalError::Cluster(c) => CliError::from(c),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}
