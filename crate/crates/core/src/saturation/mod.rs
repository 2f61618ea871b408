//! Given-clause saturation with set of support and proof enumeration.

mod config;
mod engine;
mod log;

pub use config::{ConfigError, SearchConfig, SosPolicy};
pub use engine::{saturate, Counters, Limit, SaturationError, SaturationResult, Status};
pub use log::{ClauseId, DerivationLog, InferenceRecord, Rule};
