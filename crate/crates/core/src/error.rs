use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid group spec `{spec}`: {msg}")]
    GroupSpec { spec: String, msg: String },

    #[error("closure exceeded the order cap of {cap} elements")]
    OrderCap { cap: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("enumeration budget exceeded: {required} evaluations required, budget is {budget}")]
    Budget { required: u128, budget: u128 },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("{file}: field `{field}`: {msg}")]
    Schema { file: String, field: String, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
