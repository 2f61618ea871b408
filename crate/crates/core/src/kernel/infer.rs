//! Binary resolution, factoring and tautology detection.

use crate::syntax::{Clause, Literal};

use super::unify::Bindings;

/// Shifts the variables of `c` so they cannot collide with those of `other`.
pub fn rename_apart(c: &Clause, other: &Clause) -> Clause {
    match other.max_var() {
        Some(m) => c.map_vars(|v| crate::syntax::Term::Var(v + m + 1)),
        None => c.clone(),
    }
}

fn dedup(lits: Vec<Literal>) -> Clause {
    let mut c = Clause::new(lits);
    c.dedup_literals();
    c
}

/// Resolves literal `i` of `left` against literal `j` of `right`.
///
/// `right` is renamed apart from `left` first, so passing the same clause
/// twice resolves it against a fresh copy of itself. Returns `None` when the
/// literals are not complementary or their atoms do not unify.
pub fn resolve(left: &Clause, i: usize, right: &Clause, j: usize) -> Option<Clause> {
    let right = rename_apart(right, left);
    let (li, lj) = (left.literals().get(i)?, right.literals().get(j)?);
    if li.positive == lj.positive || li.predicate != lj.predicate {
        return None;
    }
    let capacity = left.max_var().max(right.max_var()).map_or(0, |v| v as usize + 1);
    let mut b = Bindings::with_capacity(capacity);
    if !b.unify_args(&li.args, &lj.args) {
        return None;
    }
    let lits = left
        .literals()
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != i)
        .chain(right.literals().iter().enumerate().filter(|(k, _)| *k != j))
        .map(|(_, l)| b.resolve_literal(l))
        .collect();
    Some(dedup(lits))
}

/// All resolvents of `left` and `right` over every complementary literal pair,
/// tagged with the literal indices used.
pub fn resolvents(left: &Clause, right: &Clause) -> Vec<(usize, usize, Clause)> {
    let mut out = Vec::new();
    for (i, li) in left.literals().iter().enumerate() {
        for (j, lj) in right.literals().iter().enumerate() {
            if li.positive != lj.positive && li.predicate == lj.predicate {
                if let Some(r) = resolve(left, i, right, j) {
                    out.push((i, j, r));
                }
            }
        }
    }
    out
}

/// One factor per unifiable same-sign literal pair, in pair order.
pub fn factor(c: &Clause) -> Vec<Clause> {
    let lits = c.literals();
    let capacity = c.max_var().map_or(0, |v| v as usize + 1);
    let mut out = Vec::new();
    for i in 0..lits.len() {
        for j in (i + 1)..lits.len() {
            let (a, b) = (&lits[i], &lits[j]);
            if a.positive != b.positive || a.predicate != b.predicate || a == b {
                continue;
            }
            let mut store = Bindings::with_capacity(capacity);
            if store.unify_args(&a.args, &b.args) {
                out.push(dedup(lits.iter().map(|l| store.resolve_literal(l)).collect()));
            }
        }
    }
    out
}

/// Contains a literal and its syntactic complement.
pub fn is_tautology(c: &Clause) -> bool {
    let lits = c.literals();
    lits.iter().enumerate().any(|(i, a)| lits[i + 1..].iter().any(|b| a.is_complement_of(b)))
}
