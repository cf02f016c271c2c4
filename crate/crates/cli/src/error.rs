//! Process-facing error type with the exit-code contract:
//! 0 ok, 2 usage, 3 I/O, 4 data, 5 non-convergence.

use std::path::PathBuf;

use manifoldnet_core::correlate::IngestError;
use manifoldnet_core::graph::GraphError;
use manifoldnet_core::manifold::ManifoldError;
use manifoldnet_core::netgen::GenError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AppError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error("{context}: {source}")]
    Graph {
        context: String,
        #[source]
        source: GraphError,
    },
    #[error("{context}: {source}")]
    Manifold {
        context: String,
        #[source]
        source: ManifoldError,
    },
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error("{0}")]
    Usage(String),
}

impl AppError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AppError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn format(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        AppError::Format {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn graph(context: impl Into<String>, source: GraphError) -> Self {
        AppError::Graph {
            context: context.into(),
            source,
        }
    }

    pub fn manifold(context: impl Into<String>, source: ManifoldError) -> Self {
        AppError::Manifold {
            context: context.into(),
            source,
        }
    }

    /// Exit code for the shell: 2 usage (including infeasible generator
    /// specs), 3 I/O, 4 bad data, 5 non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) | AppError::Gen(_) => 2,
            AppError::Io { .. } => 3,
            AppError::Manifold { source, .. } => match source {
                ManifoldError::NoConvergence { .. } => 5,
                _ => 4,
            },
            AppError::Graph {
                source: GraphError::Manifold(ManifoldError::NoConvergence { .. }),
                ..
            } => 5,
            AppError::Format { .. } | AppError::Graph { .. } => 4,
            AppError::Ingest(e) => match e {
                IngestError::Graph(GraphError::Manifold(ManifoldError::NoConvergence {
                    ..
                })) => 5,
                _ => 4,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, AppError>;
