//! The append-only record of every clause the engine keeps.

use std::collections::HashMap;
use std::fmt::{self, Write};

use serde::{Deserialize, Serialize};

use crate::syntax::Clause;

pub type ClauseId = usize;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Input,
    Resolve,
    Factor,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Input => "input",
            Rule::Resolve => "resolve",
            Rule::Factor => "factor",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct InferenceRecord {
    pub id: ClauseId,
    /// Canonical form.
    pub clause: Clause,
    pub rule: Rule,
    pub parents: Vec<ClauseId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_label: Option<String>,
}

impl fmt::Display for InferenceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}. {} [{}", self.id, self.clause, self.rule)?;
        if let Some(label) = &self.input_label {
            write!(f, ": {label}")?;
        }
        if !self.parents.is_empty() {
            let ps: Vec<String> = self.parents.iter().map(ToString::to_string).collect();
            write!(f, ": {}", ps.join(", "))?;
        }
        f.write_str("]")
    }
}

/// Ids are dense and start at 1.
#[derive(Clone, Default, Debug)]
pub struct DerivationLog {
    records: Vec<InferenceRecord>,
    first_id: HashMap<Clause, ClauseId>,
}

impl DerivationLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn next_id(&self) -> ClauseId {
        self.records.len() + 1
    }

    /// Appends a record and returns its id. Parents must already be present.
    pub fn append(&mut self, clause: Clause, rule: Rule, parents: Vec<ClauseId>, input_label: Option<String>) -> ClauseId {
        let id = self.next_id();
        debug_assert!(parents.iter().all(|p| *p < id));
        self.first_id.entry(clause.clone()).or_insert(id);
        self.records.push(InferenceRecord { id, clause, rule, parents, input_label });
        id
    }

    pub fn get(&self, id: ClauseId) -> Option<&InferenceRecord> {
        id.checked_sub(1).and_then(|i| self.records.get(i))
    }

    pub fn records(&self) -> &[InferenceRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// First id at which a canonical clause was logged.
    pub fn first_id_of(&self, canonical: &Clause) -> Option<ClauseId> {
        self.first_id.get(canonical).copied()
    }

    /// Line-oriented text, one `id. clause [rule: parents]` per record.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let _ = writeln!(out, "{r}");
        }
        out
    }
}
