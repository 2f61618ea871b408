//! Proof metrics and pairwise comparison.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::saturation::{ClauseId, Rule};
use crate::syntax::Clause;

use super::{check_proof, proof_fingerprint, proofs_identical, InvalidProof, ProofDag};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ProofMetrics {
    /// Every node, inputs and the empty clause included.
    pub length: usize,
    pub input_count: usize,
    pub derived_count: usize,
    pub max_clause_weight: usize,
    /// Edges on the longest input-to-root path.
    pub depth: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ProofDiff {
    pub a: usize,
    pub b: usize,
    pub only_in_a: Vec<Clause>,
    pub only_in_b: Vec<Clause>,
    pub shared: Vec<Clause>,
    pub identical: bool,
    /// Some clause differs and every differing clause is a parent of its root.
    pub final_step_only: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub metrics: Vec<ProofMetrics>,
    /// Proof length to number of proofs.
    pub spectrum: BTreeMap<usize, usize>,
    pub identity: Vec<Vec<bool>>,
    pub shared: Vec<Vec<usize>>,
    /// Clauses occurring in every proof.
    pub common_core: Vec<Clause>,
    pub diffs: Vec<ProofDiff>,
    /// True when pairs were left out of `diffs` by the pair cap.
    pub diffs_truncated: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AnalysisOptions {
    /// Pairs (i < j, lexicographic) that get a full diff.
    pub max_diff_pairs: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { max_diff_pairs: 190 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("proof {} is invalid: {source}", .index + 1)]
pub struct AnalysisError {
    /// 0-based; the message counts from 1.
    pub index: usize,
    pub source: InvalidProof,
}

pub fn proof_length(p: &ProofDag) -> usize {
    p.nodes.len()
}

pub fn proof_metrics(p: &ProofDag) -> ProofMetrics {
    let input_count = p.nodes.values().filter(|r| r.rule == Rule::Input).count();
    let mut depth: HashMap<ClauseId, usize> = HashMap::new();
    for id in p.topological_order() {
        let d = p.nodes[&id].parents.iter().filter_map(|q| depth.get(q)).map(|d| d + 1).max().unwrap_or(0);
        depth.insert(id, d);
    }
    ProofMetrics {
        length: p.nodes.len(),
        input_count,
        derived_count: p.nodes.len() - input_count,
        max_clause_weight: p.nodes.values().map(|r| r.clause.weight()).max().unwrap_or(0),
        depth: depth.get(&p.root).copied().unwrap_or(0),
    }
}

/// Canonical clauses occurring as nodes of both proofs.
pub fn shared_clauses(a: &ProofDag, b: &ProofDag) -> BTreeSet<Clause> {
    a.clause_set().intersection(&b.clause_set()).cloned().collect()
}

fn root_parent_clauses(p: &ProofDag) -> BTreeSet<&Clause> {
    p.root_record().parents.iter().filter_map(|q| p.nodes.get(q)).map(|r| &r.clause).collect()
}

pub fn proof_diff(a: &ProofDag, b: &ProofDag) -> ProofDiff {
    diff_indexed(a, b, 0, 1, proofs_identical(a, b))
}

fn diff_indexed(a: &ProofDag, b: &ProofDag, ia: usize, ib: usize, identical: bool) -> ProofDiff {
    let (sa, sb) = (a.clause_set(), b.clause_set());
    let only_in_a: Vec<Clause> = sa.difference(&sb).cloned().collect();
    let only_in_b: Vec<Clause> = sb.difference(&sa).cloned().collect();
    let (ra, rb) = (root_parent_clauses(a), root_parent_clauses(b));
    let final_step_only = !(only_in_a.is_empty() && only_in_b.is_empty())
        && only_in_a.iter().all(|c| ra.contains(c))
        && only_in_b.iter().all(|c| rb.contains(c));
    ProofDiff {
        a: ia,
        b: ib,
        shared: sa.intersection(&sb).cloned().collect(),
        only_in_a,
        only_in_b,
        identical,
        final_step_only,
    }
}

pub fn analyze(proofs: &[ProofDag]) -> Result<AnalysisReport, AnalysisError> {
    analyze_with(proofs, &AnalysisOptions::default())
}

pub fn analyze_with(proofs: &[ProofDag], opts: &AnalysisOptions) -> Result<AnalysisReport, AnalysisError> {
    for (index, p) in proofs.iter().enumerate() {
        check_proof(p).map_err(|source| AnalysisError { index, source })?;
    }
    let n = proofs.len();
    let metrics: Vec<ProofMetrics> = proofs.iter().map(proof_metrics).collect();
    let mut spectrum = BTreeMap::new();
    for m in &metrics {
        *spectrum.entry(m.length).or_insert(0) += 1;
    }
    let sets: Vec<BTreeSet<Clause>> = proofs.iter().map(ProofDag::clause_set).collect();
    let prints: Vec<u64> = proofs.iter().map(proof_fingerprint).collect();
    let mut identity = vec![vec![false; n]; n];
    let mut shared = vec![vec![0; n]; n];
    for i in 0..n {
        identity[i][i] = true;
        shared[i][i] = sets[i].len();
        for j in i + 1..n {
            let same = prints[i] == prints[j] && proofs_identical(&proofs[i], &proofs[j]);
            identity[i][j] = same;
            identity[j][i] = same;
            let k = sets[i].intersection(&sets[j]).count();
            shared[i][j] = k;
            shared[j][i] = k;
        }
    }
    let common_core = match sets.split_first() {
        Some((first, rest)) => first.iter().filter(|c| rest.iter().all(|s| s.contains(*c))).cloned().collect(),
        None => Vec::new(),
    };
    let mut diffs = Vec::new();
    let mut diffs_truncated = false;
    'pairs: for i in 0..n {
        for j in i + 1..n {
            if diffs.len() == opts.max_diff_pairs {
                diffs_truncated = true;
                break 'pairs;
            }
            diffs.push(diff_indexed(&proofs[i], &proofs[j], i, j, identity[i][j]));
        }
    }
    Ok(AnalysisReport { metrics, spectrum, identity, shared, common_core, diffs, diffs_truncated })
}
