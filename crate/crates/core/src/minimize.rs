//! Greedy premise minimization by repeated provability probes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::saturation::{saturate, SaturationError, SearchConfig, Status};
use crate::tptp::{clausify, print_problem, FrontendError, ProblemSpec};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Without it the probe saturated with no proof.
    Needed,
    Redundant,
    /// Without it the probe hit a limit with no proof; the premise is kept.
    Unknown,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MinimizationResult {
    /// In input order.
    pub kept: Vec<String>,
    /// In removal order.
    pub removed: Vec<String>,
    pub verdicts: BTreeMap<String, Verdict>,
    pub budget_config: SearchConfig,
    pub probes: usize,
    /// Set when an exhaustive search over all premise subsets ran.
    pub exhaustive: Option<ExhaustiveCheck>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExhaustiveCheck {
    /// A smallest sufficient subset, first in subset enumeration order.
    pub minimum: Vec<String>,
    /// The smallest subset has fewer premises than `kept`.
    pub cardinality_gap: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MinimizeOptions {
    /// Run the exhaustive subset search when there are at most this many premises.
    pub exhaustive_up_to: usize,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        MinimizeOptions { exhaustive_up_to: 10 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinimizeError {
    #[error(transparent)]
    Frontend(#[from] FrontendError),
    #[error(transparent)]
    Search(#[from] SaturationError),
    #[error("the full premise set yields no proof: search saturated")]
    NotProvable,
    #[error("the full premise set yields no proof within the probe budget")]
    BudgetExhausted,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Probe {
    Proved,
    Saturated,
    Limited,
}

fn probe(spec: &ProblemSpec, keep: &[&str], config: &SearchConfig) -> Result<Probe, MinimizeError> {
    let set = clausify(&spec.restrict_premises(keep))?;
    if set.clauses.is_empty() {
        return Ok(Probe::Saturated);
    }
    let r = saturate(&set, config)?;
    Ok(if !r.refutations.is_empty() {
        Probe::Proved
    } else if r.status == Status::Saturated {
        Probe::Saturated
    } else {
        Probe::Limited
    })
}

pub fn minimize_premises(spec: &ProblemSpec, config: &SearchConfig) -> Result<MinimizationResult, MinimizeError> {
    minimize_premises_with(spec, config, &MinimizeOptions::default())
}

/// Deletes premises in descending label order, each for good once the rest
/// still proves the goal. Passes repeat until one removes nothing, so every
/// kept premise has been probed against the final set.
pub fn minimize_premises_with(
    spec: &ProblemSpec,
    config: &SearchConfig,
    opts: &MinimizeOptions,
) -> Result<MinimizationResult, MinimizeError> {
    let config = SearchConfig { max_proofs: Some(1), ..config.clone() };
    let all = spec.premise_labels();
    let mut probes = 1;
    match probe(spec, &all, &config)? {
        Probe::Proved => {}
        Probe::Saturated => return Err(MinimizeError::NotProvable),
        Probe::Limited => return Err(MinimizeError::BudgetExhausted),
    }
    let mut order = all.clone();
    order.sort_unstable_by(|a, b| b.cmp(a));
    let mut current = all.clone();
    let mut removed = Vec::new();
    let mut verdicts = BTreeMap::new();
    loop {
        let mut changed = false;
        for &label in &order {
            if !current.contains(&label) {
                continue;
            }
            let without: Vec<&str> = current.iter().copied().filter(|l| *l != label).collect();
            probes += 1;
            let verdict = match probe(spec, &without, &config)? {
                Probe::Proved => Verdict::Redundant,
                Probe::Saturated => Verdict::Needed,
                Probe::Limited => Verdict::Unknown,
            };
            verdicts.insert(label.to_string(), verdict);
            if verdict == Verdict::Redundant {
                current = without;
                removed.push(label.to_string());
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let exhaustive = if all.len() <= opts.exhaustive_up_to {
        let (minimum, n) = smallest_sufficient_subset(spec, &config)?;
        probes += n;
        minimum.map(|m| ExhaustiveCheck { cardinality_gap: m.len() < current.len(), minimum: m })
    } else {
        None
    };
    Ok(MinimizationResult {
        kept: current.iter().map(|s| s.to_string()).collect(),
        removed,
        verdicts,
        budget_config: config,
        probes,
        exhaustive,
    })
}

/// Index subsets of `0..n`, smallest first, lexicographic within a size.
fn subsets_by_size(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=n).flat_map(move |k| combinations(n, k))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The first sufficient subset of minimum size, with the number of probes run.
fn smallest_sufficient_subset(spec: &ProblemSpec, config: &SearchConfig) -> Result<(Option<Vec<String>>, usize), MinimizeError> {
    let labels = spec.premise_labels();
    let mut probes = 0;
    for idx in subsets_by_size(labels.len()) {
        let keep: Vec<&str> = idx.iter().map(|&i| labels[i]).collect();
        probes += 1;
        if probe(spec, &keep, config)? == Probe::Proved {
            return Ok((Some(keep.iter().map(|s| s.to_string()).collect()), probes));
        }
    }
    Ok((None, probes))
}

/// True iff `kept` proves the goal and no single deletion from it does.
pub fn verify_minimality(spec: &ProblemSpec, kept: &[&str], config: &SearchConfig) -> bool {
    let config = SearchConfig { max_proofs: Some(1), ..config.clone() };
    if probe(spec, kept, &config) != Ok(Probe::Proved) {
        return false;
    }
    kept.iter().all(|q| {
        let without: Vec<&str> = kept.iter().copied().filter(|l| l != q).collect();
        matches!(probe(spec, &without, &config), Ok(Probe::Saturated | Probe::Limited))
    })
}

/// The problem restricted to `result.kept`, with the removed premises listed
/// in a comment header.
pub fn minimized_problem_text(spec: &ProblemSpec, result: &MinimizationResult) -> String {
    let keep: Vec<&str> = result.kept.iter().map(String::as_str).collect();
    let mut header = vec![format!("Minimized: {} of {} premises kept.", result.kept.len(), spec.premise_labels().len())];
    if result.removed.is_empty() {
        header.push("Removed: none".to_string());
    } else {
        header.push(format!("Removed: {}", result.removed.join(", ")));
    }
    print_problem(&spec.restrict_premises(&keep), &header)
}
