use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid {what}: {msg}")]
    Input { what: &'static str, msg: String },

    #[error("point {point} is not on the surface (residual {residual})")]
    OffSurface { point: String, residual: String },

    #[error("{failed} of {total} identity suites failed")]
    SuitesFailed { failed: usize, total: usize },

    #[error("certificate for {0} failed to replay")]
    Certificate(String),

    #[error("cache {path}: {msg}")]
    Cache { path: String, msg: String },

    #[error(transparent)]
    Core(#[from] markoff_core::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
