use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SosPolicy {
    /// Negated-conjecture clauses form the set of support; falls back to
    /// `AllInput` when there are none.
    NegatedConjectureOnly,
    AllInput,
}

/// Search limits. `None` means unlimited.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SearchConfig {
    pub max_proofs: Option<usize>,
    pub max_weight: Option<usize>,
    pub max_given: Option<usize>,
    pub max_kept_clauses: Option<usize>,
    pub sos_policy: SosPolicy,
    pub dedup_proofs: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_proofs: None,
            max_weight: Some(64),
            max_given: Some(100_000),
            max_kept_clauses: Some(500_000),
            sos_policy: SosPolicy::NegatedConjectureOnly,
            dedup_proofs: true,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("limit '{0}' must be positive when set")]
pub struct ConfigError(pub &'static str);

impl SearchConfig {
    pub fn unlimited() -> Self {
        SearchConfig {
            max_proofs: None,
            max_weight: None,
            max_given: None,
            max_kept_clauses: None,
            sos_policy: SosPolicy::NegatedConjectureOnly,
            dedup_proofs: true,
        }
    }

    /// Budget used for provability probes: one proof, bounded given count.
    pub fn probe() -> Self {
        SearchConfig { max_proofs: Some(1), max_given: Some(20_000), ..SearchConfig::default() }
    }

    pub fn with_sos(mut self, sos: SosPolicy) -> Self {
        self.sos_policy = sos;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, v) in [
            ("max_proofs", self.max_proofs),
            ("max_weight", self.max_weight),
            ("max_given", self.max_given),
            ("max_kept_clauses", self.max_kept_clauses),
        ] {
            if v == Some(0) {
                return Err(ConfigError(name));
            }
        }
        Ok(())
    }
}
