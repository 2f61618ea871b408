//! Proof identity: rooted DAG isomorphism that respects rule names, maps
//! parents to parents as multisets and matches canonical clauses.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};

use crate::saturation::ClauseId;

use super::ProofDag;

/// Bottom-up structural hash of every node. Isomorphic nodes hash equally.
pub(crate) fn node_hashes(p: &ProofDag) -> BTreeMap<ClauseId, u64> {
    let mut out = BTreeMap::new();
    for id in p.topological_order() {
        let r = &p.nodes[&id];
        let mut parents: Vec<u64> = r.parents.iter().map(|q| out.get(q).copied().unwrap_or(0)).collect();
        parents.sort_unstable();
        let mut h = DefaultHasher::new();
        r.rule.hash(&mut h);
        r.clause.hash(&mut h);
        parents.hash(&mut h);
        out.insert(id, h.finish());
    }
    out
}

/// Isomorphism-invariant fingerprint; equal for identical proofs.
pub fn proof_fingerprint(p: &ProofDag) -> u64 {
    let hashes = node_hashes(p);
    let mut all: Vec<u64> = hashes.values().copied().collect();
    all.sort_unstable();
    let mut h = DefaultHasher::new();
    hashes.get(&p.root).hash(&mut h);
    all.hash(&mut h);
    h.finish()
}

struct Matcher<'a> {
    a: &'a ProofDag,
    b: &'a ProofDag,
    order: Vec<ClauseId>,
    hash_a: BTreeMap<ClauseId, u64>,
    by_hash_b: HashMap<u64, Vec<ClauseId>>,
    map: HashMap<ClauseId, ClauseId>,
    used: HashMap<ClauseId, bool>,
}

impl Matcher<'_> {
    fn compatible(&self, u: ClauseId, v: ClauseId) -> bool {
        let (ru, rv) = (&self.a.nodes[&u], &self.b.nodes[&v]);
        if (u == self.a.root) != (v == self.b.root) || ru.rule != rv.rule || ru.clause != rv.clause {
            return false;
        }
        if ru.parents.len() != rv.parents.len() {
            return false;
        }
        let mut mapped: Vec<ClauseId> = ru.parents.iter().map(|p| self.map[p]).collect();
        let mut theirs = rv.parents.clone();
        mapped.sort_unstable();
        theirs.sort_unstable();
        mapped == theirs
    }

    fn extend(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let u = self.order[k];
        let candidates = self.by_hash_b.get(&self.hash_a[&u]).cloned().unwrap_or_default();
        for v in candidates {
            if self.used.get(&v).copied().unwrap_or(false) || !self.compatible(u, v) {
                continue;
            }
            self.map.insert(u, v);
            self.used.insert(v, true);
            if self.extend(k + 1) {
                return true;
            }
            self.map.remove(&u);
            self.used.insert(v, false);
        }
        false
    }
}

pub fn proofs_identical(a: &ProofDag, b: &ProofDag) -> bool {
    if a.nodes.len() != b.nodes.len() {
        return false;
    }
    let hash_a = node_hashes(a);
    let hash_b = node_hashes(b);
    if hash_a.get(&a.root) != hash_b.get(&b.root) {
        return false;
    }
    let mut sa: Vec<u64> = hash_a.values().copied().collect();
    let mut sb: Vec<u64> = hash_b.values().copied().collect();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    let order = a.topological_order();
    if order.len() != a.nodes.len() || b.topological_order().len() != b.nodes.len() {
        return false;
    }
    let mut by_hash_b: HashMap<u64, Vec<ClauseId>> = HashMap::new();
    for (id, h) in &hash_b {
        by_hash_b.entry(*h).or_default().push(*id);
    }
    let mut m = Matcher { a, b, order, hash_a, by_hash_b, map: HashMap::new(), used: HashMap::new() };
    m.extend(0)
}
