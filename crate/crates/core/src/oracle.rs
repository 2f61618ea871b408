//! Brute-force enumeration of every refutation DAG of a small clause set.
//!
//! Derivations are hash-consed by (rule, clause, parent multiset), so two
//! structurally equal derivations share one id and a derivation is exactly a
//! maximally shared proof DAG. No subsumption, no set of support and no
//! tautology deletion. A DAG never contains the same canonical clause twice.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::kernel::{canonical_clause, factor, resolvents};
use crate::proof::{proof_fingerprint, proofs_identical, ProofDag};
use crate::saturation::{InferenceRecord, Rule};
use crate::syntax::Clause;

/// Default cap on stored derivations before [`OracleError::Overflow`].
pub const DEFAULT_DERIVATION_CAP: usize = 200_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EnumerationBound {
    /// Nodes per DAG, empty clause included.
    pub max_total_clauses: usize,
    pub max_clause_weight: usize,
    /// Edges on the longest input-to-root path.
    pub max_depth: usize,
}

impl EnumerationBound {
    pub fn new(max_total_clauses: usize, max_clause_weight: usize, max_depth: usize) -> Self {
        EnumerationBound { max_total_clauses, max_clause_weight, max_depth }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("every bound must be positive")]
    InvalidBound,
    #[error("more than {0} derivations within the bound")]
    Overflow(usize),
}

struct Derivation {
    clause: Clause,
    rule: Rule,
    parents: Vec<usize>,
    depth: usize,
    /// Sorted ids of every derivation in the DAG, this one included.
    nodes: Vec<usize>,
    label: Option<String>,
}

type Key = (Rule, Clause, Vec<usize>);

struct Space {
    bound: EnumerationBound,
    cap: usize,
    all: Vec<Derivation>,
    index: HashMap<Key, usize>,
}

fn merge(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Space {
    /// Adds a derivation unless it breaks a bound or already exists.
    fn add(&mut self, clause: Clause, rule: Rule, parents: Vec<usize>) -> Result<(), OracleError> {
        let clause = canonical_clause(&clause);
        if clause.weight() > self.bound.max_clause_weight {
            return Ok(());
        }
        let mut nodes = match parents.as_slice() {
            [] => Vec::new(),
            [a] => self.all[*a].nodes.clone(),
            [a, b] => merge(&self.all[*a].nodes, &self.all[*b].nodes),
            _ => unreachable!("rules have at most two parents"),
        };
        // Room for the new node, and for a root above it unless this is the root.
        let room = if clause.is_empty() { 1 } else { 2 };
        if nodes.len() + room > self.bound.max_total_clauses {
            return Ok(());
        }
        let mut sorted = parents.clone();
        sorted.sort_unstable();
        let key = (rule, clause, sorted);
        if self.index.contains_key(&key) {
            return Ok(());
        }
        // Duplication-free: the new clause may not already occur below it,
        // and the merged halves may not carry one clause twice.
        let mut seen = std::collections::HashSet::with_capacity(nodes.len() + 1);
        for &n in &nodes {
            if !seen.insert(&self.all[n].clause) {
                return Ok(());
            }
        }
        if seen.contains(&key.1) {
            return Ok(());
        }
        let depth = parents.iter().map(|p| self.all[*p].depth + 1).max().unwrap_or(0);
        if depth > self.bound.max_depth {
            return Ok(());
        }
        if self.all.len() >= self.cap {
            return Err(OracleError::Overflow(self.cap));
        }
        let id = self.all.len();
        nodes.push(id);
        let (rule, clause, _) = key.clone();
        self.index.insert(key, id);
        self.all.push(Derivation { clause, rule, parents, depth, nodes, label: None });
        Ok(())
    }

    fn to_proof(&self, root: usize) -> ProofDag {
        let nodes: BTreeMap<usize, InferenceRecord> = self.all[root]
            .nodes
            .iter()
            .map(|&n| {
                let d = &self.all[n];
                let record = InferenceRecord {
                    id: n + 1,
                    clause: d.clause.clone(),
                    rule: d.rule,
                    parents: d.parents.iter().map(|p| p + 1).collect(),
                    input_label: d.label.clone(),
                };
                (n + 1, record)
            })
            .collect();
        ProofDag { nodes, root: root + 1 }
    }
}

/// Every refutation DAG within `bound`, one per identity class.
pub fn enumerate_refutations_bounded(clauses: &[Clause], bound: EnumerationBound) -> Result<Vec<ProofDag>, OracleError> {
    enumerate_refutations_capped(clauses, bound, DEFAULT_DERIVATION_CAP)
}

/// [`enumerate_refutations_bounded`] with an explicit derivation cap.
pub fn enumerate_refutations_capped(clauses: &[Clause], bound: EnumerationBound, cap: usize) -> Result<Vec<ProofDag>, OracleError> {
    if bound.max_total_clauses == 0 || bound.max_clause_weight == 0 || bound.max_depth == 0 || cap == 0 {
        return Err(OracleError::InvalidBound);
    }
    let mut space = Space { bound, cap, all: Vec::new(), index: HashMap::new() };
    // Inputs are deduplicated by canonical form so reordering and renaming
    // never change the result.
    let mut inputs: Vec<Clause> = clauses.iter().map(canonical_clause).collect();
    inputs.sort();
    inputs.dedup();
    for (i, c) in inputs.into_iter().enumerate() {
        let before = space.all.len();
        space.add(c, Rule::Input, Vec::new())?;
        if let Some(d) = space.all.get_mut(before) {
            d.label = Some(format!("c{}", i + 1));
        }
    }
    let mut level_start = 0;
    for _ in 0..bound.max_depth {
        let level_end = space.all.len();
        if level_start == level_end {
            break;
        }
        for a in level_start..level_end {
            if space.all[a].clause.is_empty() {
                continue;
            }
            for f in factor(&space.all[a].clause) {
                space.add(f, Rule::Factor, vec![a])?;
            }
            // Partners: everything older, plus this level's members up to `a`.
            for b in 0..=a {
                if space.all[b].clause.is_empty() {
                    continue;
                }
                for (_, _, r) in resolvents(&space.all[a].clause, &space.all[b].clause) {
                    space.add(r, Rule::Resolve, vec![a, b])?;
                }
            }
        }
        level_start = level_end;
    }
    let mut out: Vec<ProofDag> = Vec::new();
    let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
    for (id, d) in space.all.iter().enumerate() {
        if !d.clause.is_empty() {
            continue;
        }
        let p = space.to_proof(id);
        let fp = proof_fingerprint(&p);
        let bucket = buckets.entry(fp).or_default();
        if bucket.iter().any(|&k| proofs_identical(&out[k], &p)) {
            continue;
        }
        bucket.push(out.len());
        out.push(p);
    }
    Ok(out)
}

pub fn count_distinct_refutations(clauses: &[Clause], bound: EnumerationBound) -> Result<usize, OracleError> {
    enumerate_refutations_bounded(clauses, bound).map(|v| v.len())
}
