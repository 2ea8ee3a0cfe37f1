use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Coxeter type `{0}`: {1}")]
    InvalidSpec(String, String),

    #[error("group of order {order} exceeds the limit of {limit} elements")]
    GroupTooLarge { order: usize, limit: usize },

    #[error("KL table for a group of order {order} needs about {required_mb} MiB; limit is {limit} elements")]
    SizePolicy {
        order: usize,
        limit: usize,
        required_mb: usize,
    },

    #[error("unknown element label `{0}`")]
    UnknownElement(String),

    #[error("cell id {0} out of range")]
    UnknownCell(usize),

    #[error("unsupported report format `{0}`")]
    UnsupportedFormat(String),

    #[error("H not closed under quotient product: {0}")]
    NotClosed(String),

    #[error("invalid based ring: {0}")]
    InvalidRing(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error("cache checksum mismatch: {0}")]
    StaleCache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
