use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("genus >= 3 required, got {0}")]
    UnsupportedGenus(usize),

    #[error("edge id {0} out of range")]
    InvalidEdge(usize),

    #[error("edge {0} is not in E0")]
    NotInE0(String),

    #[error("graph construction failed: {0}")]
    Construction(String),

    #[error("relation identity failed: {0}")]
    RelationIdentity(String),

    #[error("adapted basis rank deficiency: {0}")]
    RankDeficiency(String),

    #[error("block structure violated by word [{word}]: {detail}")]
    BlockForm { word: String, detail: String },

    #[error("invalid graph data: {0}")]
    InvalidGraphData(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
