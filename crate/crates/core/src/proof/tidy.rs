//! Structural clean-up of a proof DAG.

use std::collections::{BTreeMap, HashMap};

use crate::saturation::ClauseId;
use crate::syntax::Clause;

use super::ProofDag;

fn drop_dead(p: &mut ProofDag) -> bool {
    let live = p.live_nodes();
    let before = p.nodes.len();
    p.nodes.retain(|id, _| live.contains(id));
    p.nodes.len() != before
}

/// Redirects every reference to a repeated clause onto its topologically
/// first occurrence. Ancestors come first, so no cycle can appear.
fn merge_duplicates(p: &mut ProofDag) -> bool {
    let mut first: HashMap<Clause, ClauseId> = HashMap::new();
    let mut redirect: BTreeMap<ClauseId, ClauseId> = BTreeMap::new();
    for id in p.topological_order() {
        let clause = p.nodes[&id].clause.clone();
        match first.get(&clause) {
            Some(&earlier) if id != p.root => {
                redirect.insert(id, earlier);
            }
            _ => {
                first.insert(clause, id);
            }
        }
    }
    if redirect.is_empty() {
        return false;
    }
    for r in p.nodes.values_mut() {
        for q in &mut r.parents {
            if let Some(to) = redirect.get(q) {
                *q = *to;
            }
        }
    }
    true
}

/// Removes nodes that do not reach the root and keeps one node per
/// canonical clause, repeated until nothing changes.
pub fn structural_tidy(p: &ProofDag) -> ProofDag {
    let mut out = p.clone();
    drop_dead(&mut out);
    while merge_duplicates(&mut out) {
        drop_dead(&mut out);
    }
    out
}
