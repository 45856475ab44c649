use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported order {order} (supported up to {max})")]
    UnsupportedOrder { order: u32, max: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    #[error("phase is not a multiple of a quarter turn: {0}")]
    PhaseModel(String),

    #[error("cannot add values on different axes ({a} and {b} quarter turns)")]
    MixedAxis { a: u8, b: u8 },

    #[error("product truncation needs {needed} factors, above the cap of {cap}")]
    TruncationCap { needed: u64, cap: u64 },

    #[error("series would need {needed} terms; this regime needs the transformed evaluation")]
    Regime { needed: u64 },

    #[error("series would need {needed} terms; the argument is outside the supported scale")]
    Scale { needed: u64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("precision insufficient at {cell}: {detail}")]
    Precision { cell: String, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
