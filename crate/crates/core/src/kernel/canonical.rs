//! Canonical clause forms.
//!
//! Literal order: positive before negative, then predicate name, then the
//! argument structure read in preorder, where a variable sorts before any
//! function symbol and variables compare by first-occurrence index. Because
//! first-occurrence indices depend on the order chosen so far, the canonical
//! form is the lexicographically least encoding over every literal order; the
//! search branches only where two literals encode identically.

use std::cmp::Ordering;

use crate::syntax::{Clause, Literal, Symbol, Term, Var};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Key {
    Var(u32),
    Sym(Symbol, usize),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Encoded {
    negative: bool,
    predicate: Symbol,
    arity: usize,
    args: Vec<Key>,
}

struct Numbering {
    slots: Vec<Option<u32>>,
    next: u32,
}

impl Numbering {
    fn get(&self, v: Var) -> Option<u32> {
        self.slots.get(v as usize).copied().flatten()
    }
}

fn encode(lit: &Literal, numbering: &Numbering) -> Encoded {
    // Fresh variables get the next free numbers in local first-occurrence order.
    let mut local: Vec<(Var, u32)> = Vec::new();
    let mut next = numbering.next;
    let mut args = Vec::new();
    fn walk(t: &Term, numbering: &Numbering, local: &mut Vec<(Var, u32)>, next: &mut u32, out: &mut Vec<Key>) {
        match t {
            Term::Var(v) => {
                let n = match numbering.get(*v) {
                    Some(n) => n,
                    None => match local.iter().find(|(w, _)| w == v) {
                        Some((_, n)) => *n,
                        None => {
                            local.push((*v, *next));
                            *next += 1;
                            *next - 1
                        }
                    },
                };
                out.push(Key::Var(n));
            }
            Term::App(f, xs) => {
                out.push(Key::Sym(f.clone(), xs.len()));
                for x in xs {
                    walk(x, numbering, local, next, out);
                }
            }
        }
    }
    for a in &lit.args {
        walk(a, numbering, &mut local, &mut next, &mut args);
    }
    Encoded { negative: !lit.positive, predicate: lit.predicate.clone(), arity: lit.args.len(), args }
}

fn assign(lit: &Literal, numbering: &mut Numbering) {
    fn walk(t: &Term, numbering: &mut Numbering) {
        match t {
            Term::Var(v) => {
                let i = *v as usize;
                if i >= numbering.slots.len() {
                    numbering.slots.resize(i + 1, None);
                }
                if numbering.slots[i].is_none() {
                    numbering.slots[i] = Some(numbering.next);
                    numbering.next += 1;
                }
            }
            Term::App(_, xs) => xs.iter().for_each(|x| walk(x, numbering)),
        }
    }
    lit.args.iter().for_each(|a| walk(a, numbering));
}

struct Best {
    encoding: Vec<Encoded>,
    order: Vec<usize>,
    slots: Vec<Option<u32>>,
}

fn has_unnumbered_var_shared_with(lit: &Literal, others: &[&Literal], numbering: &Numbering) -> bool {
    let mut vars = Vec::new();
    lit.args.iter().for_each(|a| a.collect_vars(&mut vars));
    vars.iter()
        .filter(|v| numbering.get(**v).is_none())
        .any(|v| others.iter().any(|o| o.args.iter().any(|a| a.occurs(*v))))
}

fn search(
    lits: &[Literal],
    remaining: &mut Vec<usize>,
    numbering: &mut Numbering,
    prefix: &mut Vec<Encoded>,
    order: &mut Vec<usize>,
    mut better: bool,
    best: &mut Option<Best>,
) {
    if remaining.is_empty() {
        if best.is_none() || better {
            *best = Some(Best { encoding: prefix.clone(), order: order.clone(), slots: numbering.slots.clone() });
        }
        return;
    }
    let encs: Vec<Encoded> = remaining.iter().map(|&i| encode(&lits[i], numbering)).collect();
    let min = encs.iter().min().cloned().expect("nonempty");
    if !better {
        if let Some(b) = best.as_ref() {
            match min.cmp(&b.encoding[prefix.len()]) {
                Ordering::Greater => return,
                Ordering::Less => better = true,
                Ordering::Equal => {}
            }
        }
    }
    let tied: Vec<usize> = (0..remaining.len()).filter(|&k| encs[k] == min).collect();
    let mut candidates = Vec::with_capacity(tied.len());
    let mut isolated_taken = false;
    for &k in &tied {
        let others: Vec<&Literal> =
            remaining.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, &i)| &lits[i]).collect();
        if has_unnumbered_var_shared_with(&lits[remaining[k]], &others, numbering) {
            candidates.push(k);
        } else if !isolated_taken {
            isolated_taken = true;
            candidates.push(k);
        }
    }
    for k in candidates {
        let lit_index = remaining.remove(k);
        let saved_slots = numbering.slots.clone();
        let saved_next = numbering.next;
        assign(&lits[lit_index], numbering);
        prefix.push(min.clone());
        order.push(lit_index);
        search(lits, remaining, numbering, prefix, order, better, best);
        order.pop();
        prefix.pop();
        numbering.slots = saved_slots;
        numbering.next = saved_next;
        remaining.insert(k, lit_index);
        // The best order now shares this prefix, so siblings compete on equal footing.
        better = false;
    }
}

/// Duplicate-free, literal-sorted, variable-renamed normal form.
pub fn canonical_clause(c: &Clause) -> Clause {
    let mut c = c.clone();
    c.dedup_literals();
    let lits = c.literals();
    if lits.is_empty() {
        return Clause::empty();
    }
    let mut remaining: Vec<usize> = (0..lits.len()).collect();
    let mut numbering = Numbering { slots: vec![None; c.max_var().map_or(0, |v| v as usize + 1)], next: 0 };
    let mut best = None;
    search(lits, &mut remaining, &mut numbering, &mut Vec::new(), &mut Vec::new(), false, &mut best);
    let best = best.expect("search visits at least one order");
    let mut rename = |v: Var| Term::Var(best.slots[v as usize].expect("every variable numbered"));
    let out: Vec<Literal> = best.order.iter().map(|&i| lits[i].map_vars(&mut rename)).collect();
    Clause::new(out)
}

/// Variant test: equal canonical forms.
pub fn is_variant(a: &Clause, b: &Clause) -> bool {
    canonical_clause(a) == canonical_clause(b)
}
