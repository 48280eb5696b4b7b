use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("author name is empty or whitespace-only")]
    RejectedName,

    #[error("duplicate paper id: {0}")]
    DuplicatePaperId(String),

    #[error("unknown paper id: {0}")]
    UnknownPaper(String),

    #[error("unknown author: {0}")]
    UnknownAuthor(String),

    #[error("unknown indicator: {0} (expected one of x, h, acnpp, tcn, tpn)")]
    UnknownIndicator(String),

    #[error("n must be at least 1")]
    InvalidN,

    #[error("gold-standard set is empty")]
    EmptyGoldStandard,

    #[error("missing required columns: {0}")]
    MissingColumns(&'static str),

    #[error("malformed graph dump: {0}")]
    MalformedDump(String),

    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
