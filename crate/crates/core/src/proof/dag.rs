//! Refutation DAGs: extraction from a log and independent checking.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::kernel::{canonical_clause, factor, resolvents};
use crate::saturation::{ClauseId, DerivationLog, InferenceRecord, Rule};
use crate::syntax::Clause;

/// Ancestor-closed sub-DAG of a derivation, rooted at an empty clause.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProofDag {
    pub nodes: BTreeMap<ClauseId, InferenceRecord>,
    pub root: ClauseId,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProofError {
    #[error("clause {0} is not in the log")]
    UnknownId(ClauseId),
    #[error("clause {0} is not the empty clause")]
    NotEmpty(ClauseId),
}

/// Why a DAG failed [`check_proof`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvalidProof {
    #[error("root {0} is missing")]
    MissingRoot(ClauseId),
    #[error("root {0} is not the empty clause")]
    RootNotEmpty(ClauseId),
    #[error("node {node} refers to missing parent {parent}")]
    MissingParent { node: ClauseId, parent: ClauseId },
    #[error("cycle through node {0}")]
    Cycle(ClauseId),
    #[error("node {0} is stored under a different id")]
    IdMismatch(ClauseId),
    #[error("node {0} is not in canonical form")]
    NotCanonical(ClauseId),
    #[error("node {node}: {reason}")]
    BadInference { node: ClauseId, reason: String },
}

impl ProofDag {
    pub fn root_record(&self) -> &InferenceRecord {
        &self.nodes[&self.root]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Node ids with parents before children; ties broken by id.
    pub fn topological_order(&self) -> Vec<ClauseId> {
        let mut indegree: BTreeMap<ClauseId, usize> = BTreeMap::new();
        let mut children: BTreeMap<ClauseId, Vec<ClauseId>> = BTreeMap::new();
        for (id, r) in &self.nodes {
            let distinct: BTreeSet<ClauseId> = r.parents.iter().copied().filter(|p| self.nodes.contains_key(p)).collect();
            indegree.insert(*id, distinct.len());
            for p in distinct {
                children.entry(p).or_default().push(*id);
            }
        }
        let mut ready: BTreeSet<ClauseId> = indegree.iter().filter(|(_, d)| **d == 0).map(|(id, _)| *id).collect();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(id) = ready.pop_first() {
            order.push(id);
            for c in children.get(&id).into_iter().flatten() {
                let d = indegree.get_mut(c).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.insert(*c);
                }
            }
        }
        order
    }

    /// Canonical clauses of all nodes.
    pub fn clause_set(&self) -> BTreeSet<Clause> {
        self.nodes.values().map(|r| r.clause.clone()).collect()
    }

    /// Ids that reach the root by following child edges.
    pub fn live_nodes(&self) -> BTreeSet<ClauseId> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            if !self.nodes.contains_key(&id) || !seen.insert(id) {
                continue;
            }
            stack.extend(self.nodes[&id].parents.iter().copied());
        }
        seen
    }
}

/// The ancestor closure of `empty_id` in `log`.
pub fn extract_proof(log: &DerivationLog, empty_id: ClauseId) -> Result<ProofDag, ProofError> {
    let root = log.get(empty_id).ok_or(ProofError::UnknownId(empty_id))?;
    if !root.clause.is_empty() {
        return Err(ProofError::NotEmpty(empty_id));
    }
    let mut nodes = BTreeMap::new();
    let mut stack = vec![empty_id];
    while let Some(id) = stack.pop() {
        if nodes.contains_key(&id) {
            continue;
        }
        let r = log.get(id).ok_or(ProofError::UnknownId(id))?;
        stack.extend(r.parents.iter().copied());
        nodes.insert(id, r.clone());
    }
    Ok(ProofDag { nodes, root: empty_id })
}

/// Re-derives the clause of a non-input node from its parents.
fn rederive(node: &InferenceRecord, parents: &[&InferenceRecord]) -> Result<(), String> {
    let target = &node.clause;
    match (node.rule, parents) {
        (Rule::Input, []) => Ok(()),
        (Rule::Input, _) => Err("input node has parents".into()),
        (Rule::Factor, [p]) => {
            if factor(&p.clause).iter().any(|f| &canonical_clause(f) == target) {
                Ok(())
            } else {
                Err(format!("no factor of {} gives {}", p.id, target))
            }
        }
        (Rule::Factor, _) => Err("factor needs exactly one parent".into()),
        (Rule::Resolve, [a, b]) => {
            if resolvents(&a.clause, &b.clause).iter().any(|(_, _, r)| &canonical_clause(r) == target) {
                Ok(())
            } else {
                Err(format!("no resolvent of {} and {} gives {}", a.id, b.id, target))
            }
        }
        (Rule::Resolve, _) => Err("resolve needs exactly two parents".into()),
    }
}

/// Structural and inferential validity of a refutation DAG.
pub fn check_proof(p: &ProofDag) -> Result<(), InvalidProof> {
    let root = p.nodes.get(&p.root).ok_or(InvalidProof::MissingRoot(p.root))?;
    if !root.clause.is_empty() {
        return Err(InvalidProof::RootNotEmpty(p.root));
    }
    for (id, r) in &p.nodes {
        if r.id != *id {
            return Err(InvalidProof::IdMismatch(*id));
        }
        for parent in &r.parents {
            if !p.nodes.contains_key(parent) {
                return Err(InvalidProof::MissingParent { node: *id, parent: *parent });
            }
        }
    }
    let order = p.topological_order();
    if order.len() != p.nodes.len() {
        let stuck = p.nodes.keys().find(|id| !order.contains(id)).copied().unwrap_or(p.root);
        return Err(InvalidProof::Cycle(stuck));
    }
    for id in order {
        let r = &p.nodes[&id];
        if canonical_clause(&r.clause) != r.clause {
            return Err(InvalidProof::NotCanonical(id));
        }
        let parents: Vec<&InferenceRecord> = r.parents.iter().map(|q| &p.nodes[q]).collect();
        rederive(r, &parents).map_err(|reason| InvalidProof::BadInference { node: id, reason })?;
    }
    Ok(())
}

pub fn is_valid_proof(p: &ProofDag) -> bool {
    check_proof(p).is_ok()
}

/// [`check_proof`] plus: every input node is the canonical form of one of `inputs`.
pub fn check_proof_against(p: &ProofDag, inputs: &[Clause]) -> Result<(), InvalidProof> {
    check_proof(p)?;
    let allowed: BTreeSet<Clause> = inputs.iter().map(canonical_clause).collect();
    for r in p.nodes.values().filter(|r| r.rule == Rule::Input) {
        if !allowed.contains(&r.clause) {
            return Err(InvalidProof::BadInference { node: r.id, reason: format!("{} is not an input clause", r.clause) });
        }
    }
    Ok(())
}
