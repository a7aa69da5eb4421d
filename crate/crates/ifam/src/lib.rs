//! Exact bounds, extremal constructions and brute-force oracles for
//! intersecting and cross-intersecting families of k-sets.
//!
//! Elements are 1-indexed labels; families live on an interval ground set
//! `[lo, hi]` and are stored as `u128` bitsets, so search code handles
//! labels up to 128. Formula code works with arbitrary `n`.

pub mod binom;
pub mod cli;
pub mod family;
pub mod json;
pub mod lex;
pub mod oracle;
pub mod resistance;
pub mod subset;
pub mod zoo;

pub use binom::{binomial, cascade, CascadeForm};
pub use family::SetFamily;
pub use subset::{lex_cmp, GroundSet, Subset};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("size cap exceeded: {0}")]
    Cap(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
