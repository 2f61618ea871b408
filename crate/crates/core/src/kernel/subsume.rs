//! Multiset subsumption: `c` subsumes `d` when some instance of `c` embeds
//! injectively into `d`.

use crate::syntax::{Clause, Literal, Term, Var};

/// One-way matching: binds only pattern variables; target variables are rigid.
fn match_term(pattern: &Term, target: &Term, binds: &mut Vec<Option<Term>>, trail: &mut Vec<Var>) -> bool {
    match pattern {
        Term::Var(v) => {
            let i = *v as usize;
            match &binds[i] {
                Some(t) => t == target,
                None => {
                    binds[i] = Some(target.clone());
                    trail.push(*v);
                    true
                }
            }
        }
        Term::App(f, xs) => match target {
            Term::App(g, ys) if f == g && xs.len() == ys.len() => {
                xs.iter().zip(ys).all(|(x, y)| match_term(x, y, binds, trail))
            }
            _ => false,
        },
    }
}

fn match_literal(p: &Literal, t: &Literal, binds: &mut Vec<Option<Term>>, trail: &mut Vec<Var>) -> bool {
    p.positive == t.positive
        && p.predicate == t.predicate
        && p.args.len() == t.args.len()
        && p.args.iter().zip(&t.args).all(|(x, y)| match_term(x, y, binds, trail))
}

fn undo(binds: &mut [Option<Term>], trail: &mut Vec<Var>, mark: usize) {
    for v in trail.drain(mark..) {
        binds[v as usize] = None;
    }
}

fn embed(c: &[Literal], d: &[Literal], k: usize, used: &mut [bool], binds: &mut Vec<Option<Term>>, trail: &mut Vec<Var>) -> bool {
    if k == c.len() {
        return true;
    }
    for (j, lit) in d.iter().enumerate() {
        if used[j] {
            continue;
        }
        let mark = trail.len();
        if match_literal(&c[k], lit, binds, trail) {
            used[j] = true;
            if embed(c, d, k + 1, used, binds, trail) {
                return true;
            }
            used[j] = false;
        }
        undo(binds, trail, mark);
    }
    false
}

/// Cheap necessary condition: per sign and predicate, `c` has no more
/// literals than `d`.
fn feature_compatible(c: &Clause, d: &Clause) -> bool {
    c.literals().iter().all(|l| {
        let need = c.literals().iter().filter(|m| m.positive == l.positive && m.predicate == l.predicate).count();
        let have = d.literals().iter().filter(|m| m.positive == l.positive && m.predicate == l.predicate).count();
        need <= have
    })
}

pub fn subsumes(c: &Clause, d: &Clause) -> bool {
    if c.len() > d.len() || !feature_compatible(c, d) {
        return false;
    }
    let n = c.max_var().map_or(0, |v| v as usize + 1);
    let mut binds = vec![None; n];
    let mut trail = Vec::new();
    let mut used = vec![false; d.len()];
    // Most constrained literals first: heavier literals have fewer matches.
    let mut order: Vec<&Literal> = c.literals().iter().collect();
    order.sort_by_key(|l| std::cmp::Reverse(l.weight()));
    let ordered: Vec<Literal> = order.into_iter().cloned().collect();
    embed(&ordered, d.literals(), 0, &mut used, &mut binds, &mut trail)
}
