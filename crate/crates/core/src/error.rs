use thiserror::Error;

/// Errors surfaced by graph ingestion and the cut machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not 2-edge-connected: edge {bridge} is a bridge")]
    NotTwoEdgeConnected { bridge: usize },

    #[error("graph is not 3-edge-connected: {reason}")]
    NotThreeEdgeConnected { reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cut set is incomplete or incorrect: {0}")]
    InvalidCutSet(String),

    #[error("3-edge-connectivity labeling is inconsistent: {0}")]
    InvalidLabels(String),

    #[error("compressed-hash grouping is inconsistent (collision suspected): {0}")]
    HashCollision(String),
}
