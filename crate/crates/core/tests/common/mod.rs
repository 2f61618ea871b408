//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

pub mod checks;

use std::collections::HashMap;

use proofscope::tptp::{FTerm, Formula};
use proofscope::{Clause, Literal, Symbol, Term};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Function and predicate symbols with arities.
#[derive(Clone, Debug)]
pub struct Sig {
    pub funcs: Vec<(&'static str, usize)>,
    pub preds: Vec<(&'static str, usize)>,
}

impl Sig {
    /// Three symbols: a/0, f/1 and the predicate p/2.
    pub fn three() -> Sig {
        Sig { funcs: vec![("a", 0), ("f", 1)], preds: vec![("p", 2)] }
    }

    pub fn rich() -> Sig {
        Sig {
            funcs: vec![("a", 0), ("b", 0), ("f", 1), ("g", 2)],
            preds: vec![("p", 1), ("q", 2), ("r", 0), ("s", 3)],
        }
    }
}

pub fn gen_term(rng: &mut impl Rng, sig: &Sig, nvars: u32, depth: usize) -> Term {
    let leaf = depth == 0 || rng.random_bool(0.4);
    if leaf {
        let consts: Vec<&str> = sig.funcs.iter().filter(|f| f.1 == 0).map(|f| f.0).collect();
        if nvars > 0 && (consts.is_empty() || rng.random_bool(0.6)) {
            return Term::Var(rng.random_range(0..nvars));
        }
        return Term::constant(consts.choose(rng).unwrap());
    }
    let (name, arity) = *sig.funcs.choose(rng).unwrap();
    Term::app(name, (0..arity).map(|_| gen_term(rng, sig, nvars, depth - 1)).collect())
}

pub fn gen_literal(rng: &mut impl Rng, sig: &Sig, nvars: u32, depth: usize) -> Literal {
    let (name, arity) = *sig.preds.choose(rng).unwrap();
    Literal::new(rng.random_bool(0.5), name, (0..arity).map(|_| gen_term(rng, sig, nvars, depth)).collect())
}

pub fn gen_clause(rng: &mut impl Rng, sig: &Sig, max_lits: usize, nvars: u32, depth: usize) -> Clause {
    let n = rng.random_range(1..=max_lits);
    Clause::new((0..n).map(|_| gen_literal(rng, sig, nvars, depth)).collect())
}

/// Random literal order and an injective variable renaming.
pub fn shuffle_and_rename(rng: &mut impl Rng, c: &Clause) -> Clause {
    let mut lits = c.literals().to_vec();
    lits.shuffle(rng);
    let mut vars: Vec<u32> = (0..64).collect();
    vars.shuffle(rng);
    Clause::new(lits).map_vars(|v| Term::Var(vars[v as usize % 64] + 100))
}

pub fn atom(i: usize) -> String {
    format!("p{i}")
}

/// Ground propositional clause over atoms p0..p{atoms-1}.
pub fn gen_ground_clause(rng: &mut impl Rng, atoms: usize, max_lits: usize) -> Clause {
    let n = rng.random_range(1..=max_lits);
    Clause::new((0..n).map(|_| Literal::new(rng.random_bool(0.5), &atom(rng.random_range(0..atoms)), vec![])).collect())
}

pub fn gen_ground_set(rng: &mut impl Rng, max_clauses: usize, atoms: usize) -> Vec<Clause> {
    let n = rng.random_range(1..=max_clauses);
    (0..n).map(|_| gen_ground_clause(rng, atoms, 3)).collect()
}

/// Satisfiability of propositional (0-ary) clauses by truth table.
pub fn truth_table_sat(clauses: &[Clause]) -> bool {
    let mut names: Vec<&str> = clauses.iter().flat_map(|c| c.literals()).map(|l| l.predicate.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    (0u64..1 << names.len()).any(|bits| {
        clauses.iter().all(|c| {
            c.literals().iter().any(|l| {
                let i = names.binary_search(&l.predicate.as_str()).unwrap();
                ((bits >> i) & 1 == 1) == l.positive
            })
        })
    })
}

/// Interpretation over the domain 0..n.
pub struct Interp {
    pub n: usize,
    pub funcs: HashMap<Symbol, Vec<usize>>,
    pub preds: HashMap<Symbol, Vec<bool>>,
}

fn index(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, a| acc * n + a)
}

impl Interp {
    pub fn term(&self, t: &Term, env: &[usize]) -> usize {
        match t {
            Term::Var(v) => env[*v as usize],
            Term::App(f, args) => {
                let vals: Vec<usize> = args.iter().map(|a| self.term(a, env)).collect();
                self.funcs[f][index(self.n, &vals)]
            }
        }
    }

    pub fn literal(&self, l: &Literal, env: &[usize]) -> bool {
        let vals: Vec<usize> = l.args.iter().map(|a| self.term(a, env)).collect();
        self.preds[&l.predicate][index(self.n, &vals)] == l.positive
    }

    pub fn clause(&self, c: &Clause) -> bool {
        let nvars = c.max_var().map_or(0, |v| v as usize + 1);
        let mut env = vec![0; nvars];
        loop {
            if !c.literals().iter().any(|l| self.literal(l, &env)) {
                return false;
            }
            // Next assignment, odometer style.
            let mut i = 0;
            loop {
                if i == nvars {
                    return true;
                }
                env[i] += 1;
                if env[i] < self.n {
                    break;
                }
                env[i] = 0;
                i += 1;
            }
        }
    }

    fn fterm(&self, t: &FTerm, env: &HashMap<String, usize>) -> usize {
        match t {
            FTerm::Var(v) => env[v],
            FTerm::App(f, args) => {
                let vals: Vec<usize> = args.iter().map(|a| self.fterm(a, env)).collect();
                self.funcs[f][index(self.n, &vals)]
            }
        }
    }

    pub fn formula(&self, f: &Formula, env: &mut HashMap<String, usize>) -> bool {
        match f {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(p, args) => {
                let vals: Vec<usize> = args.iter().map(|a| self.fterm(a, env)).collect();
                self.preds[p][index(self.n, &vals)]
            }
            Formula::Not(a) => !self.formula(a, env),
            Formula::And(xs) => xs.iter().all(|x| self.formula(x, env)),
            Formula::Or(xs) => xs.iter().any(|x| self.formula(x, env)),
            Formula::Implies(a, b) => !self.formula(a, env) || self.formula(b, env),
            Formula::Iff(a, b) => self.formula(a, env) == self.formula(b, env),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let universal = matches!(f, Formula::Forall(..));
                let saved = env.get(v).copied();
                let mut result = universal;
                for d in 0..self.n {
                    env.insert(v.clone(), d);
                    if self.formula(body, env) != universal {
                        result = !universal;
                        break;
                    }
                }
                match saved {
                    Some(s) => env.insert(v.clone(), s),
                    None => env.remove(v),
                };
                result
            }
        }
    }
}

/// Enumerates every interpretation of the given symbols over 0..n, stopping
/// at the first that satisfies `holds`. `None` when the space exceeds `cap`.
pub fn find_model(
    n: usize,
    funcs: &[(Symbol, usize)],
    preds: &[(Symbol, usize)],
    cap: u128,
    holds: impl Fn(&Interp) -> bool,
) -> Option<bool> {
    let mut cells: Vec<usize> = Vec::new();
    let mut space: u128 = 1;
    for (_, k) in funcs {
        let m = n.pow(*k as u32);
        for _ in 0..m {
            cells.push(n);
            space = space.saturating_mul(n as u128);
        }
    }
    for (_, k) in preds {
        let m = n.pow(*k as u32);
        for _ in 0..m {
            cells.push(2);
            space = space.saturating_mul(2);
        }
    }
    if space > cap {
        return None;
    }
    let mut values = vec![0usize; cells.len()];
    loop {
        let mut interp = Interp { n, funcs: HashMap::new(), preds: HashMap::new() };
        let mut at = 0;
        for (f, k) in funcs {
            let m = n.pow(*k as u32);
            interp.funcs.insert(f.clone(), values[at..at + m].to_vec());
            at += m;
        }
        for (p, k) in preds {
            let m = n.pow(*k as u32);
            interp.preds.insert(p.clone(), values[at..at + m].iter().map(|v| *v == 1).collect());
            at += m;
        }
        if holds(&interp) {
            return Some(true);
        }
        let mut i = 0;
        loop {
            if i == cells.len() {
                return Some(false);
            }
            values[i] += 1;
            if values[i] < cells[i] {
                break;
            }
            values[i] = 0;
            i += 1;
        }
    }
}

/// Function and predicate symbols of a clause set.
pub fn clause_symbols(clauses: &[Clause]) -> (Vec<(Symbol, usize)>, Vec<(Symbol, usize)>) {
    fn term(t: &Term, out: &mut Vec<(Symbol, usize)>) {
        if let Term::App(f, args) = t {
            if !out.iter().any(|(g, _)| g == f) {
                out.push((f.clone(), args.len()));
            }
            args.iter().for_each(|a| term(a, out));
        }
    }
    let mut funcs = Vec::new();
    let mut preds = Vec::new();
    for l in clauses.iter().flat_map(|c| c.literals()) {
        if !preds.iter().any(|(p, _)| *p == l.predicate) {
            preds.push((l.predicate.clone(), l.args.len()));
        }
        l.args.iter().for_each(|a| term(a, &mut funcs));
    }
    (funcs, preds)
}

pub fn formula_symbols(f: &Formula) -> (Vec<(Symbol, usize)>, Vec<(Symbol, usize)>) {
    fn term(t: &FTerm, out: &mut Vec<(Symbol, usize)>) {
        if let FTerm::App(f, args) = t {
            if !out.iter().any(|(g, _)| g == f) {
                out.push((f.clone(), args.len()));
            }
            args.iter().for_each(|a| term(a, out));
        }
    }
    fn go(f: &Formula, funcs: &mut Vec<(Symbol, usize)>, preds: &mut Vec<(Symbol, usize)>) {
        match f {
            Formula::True | Formula::False => {}
            Formula::Atom(p, args) => {
                if !preds.iter().any(|(q, _)| q == p) {
                    preds.push((p.clone(), args.len()));
                }
                args.iter().for_each(|a| term(a, funcs));
            }
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => go(a, funcs, preds),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().for_each(|x| go(x, funcs, preds)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                go(a, funcs, preds);
                go(b, funcs, preds);
            }
        }
    }
    let (mut funcs, mut preds) = (Vec::new(), Vec::new());
    go(f, &mut funcs, &mut preds);
    (funcs, preds)
}

/// Random propositional formula over atoms p0..p{atoms-1}.
pub fn gen_prop_formula(rng: &mut impl Rng, atoms: usize, depth: usize) -> Formula {
    if depth == 0 || rng.random_bool(0.25) {
        return match rng.random_range(0..20) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::atom(&atom(rng.random_range(0..atoms)), vec![]),
        };
    }
    let sub = |rng: &mut _| gen_prop_formula(rng, atoms, depth - 1);
    match rng.random_range(0..5) {
        0 => Formula::not(sub(rng)),
        1 => Formula::And(vec![sub(rng), sub(rng)]),
        2 => Formula::Or(vec![sub(rng), sub(rng)]),
        3 => Formula::implies(sub(rng), sub(rng)),
        _ => Formula::Iff(Box::new(sub(rng)), Box::new(sub(rng))),
    }
}

/// Random closed formula over at most two of p/1, q/1, r/2 with variables X, Y.
pub fn gen_quantified_formula(rng: &mut impl Rng, depth: usize) -> Formula {
    let mut preds = vec![("p", 1), ("q", 1), ("r", 2)];
    preds.shuffle(rng);
    preds.truncate(2);
    fn go(rng: &mut impl Rng, preds: &[(&str, usize)], depth: usize, bound: &mut Vec<&'static str>) -> Formula {
        if depth == 0 || rng.random_bool(0.2) {
            let (p, arity) = *preds.choose(rng).unwrap();
            let args = (0..arity)
                .map(|_| {
                    if bound.is_empty() {
                        FTerm::Var("X".into())
                    } else {
                        FTerm::Var(bound.choose(rng).unwrap().to_string())
                    }
                })
                .collect();
            return Formula::atom(p, args);
        }
        match rng.random_range(0..7) {
            0 => Formula::not(go(rng, preds, depth - 1, bound)),
            1 => Formula::And(vec![go(rng, preds, depth - 1, bound), go(rng, preds, depth - 1, bound)]),
            2 => Formula::Or(vec![go(rng, preds, depth - 1, bound), go(rng, preds, depth - 1, bound)]),
            3 => Formula::implies(go(rng, preds, depth - 1, bound), go(rng, preds, depth - 1, bound)),
            4 => Formula::Iff(Box::new(go(rng, preds, depth - 1, bound)), Box::new(go(rng, preds, depth - 1, bound))),
            k => {
                let v = *["X", "Y"].choose(rng).unwrap();
                bound.push(v);
                let body = go(rng, preds, depth - 1, bound);
                bound.pop();
                if k == 5 {
                    Formula::forall(v, body)
                } else {
                    Formula::exists(v, body)
                }
            }
        }
    }
    go(rng, &preds, depth, &mut Vec::new()).closed()
}

/// Does `c` subsume `d`? Tries every substitution of `c`'s variables into
/// `universe` and then every injective literal assignment.
pub fn brute_subsumes(c: &Clause, d: &Clause, universe: &[Term]) -> bool {
    let vars = c.vars();
    if c.len() > d.len() {
        return false;
    }
    let mut choice = vec![0usize; vars.len()];
    loop {
        let map: HashMap<u32, Term> = vars.iter().zip(&choice).map(|(v, i)| (*v, universe[*i].clone())).collect();
        let inst = c.map_vars(|v| map[&v].clone());
        if injective_embedding(inst.literals(), d.literals(), &mut vec![false; d.len()]) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return false;
            }
            choice[i] += 1;
            if choice[i] < universe.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn injective_embedding(c: &[Literal], d: &[Literal], used: &mut Vec<bool>) -> bool {
    let Some((first, rest)) = c.split_first() else {
        return true;
    };
    for j in 0..d.len() {
        if !used[j] && d[j] == *first {
            used[j] = true;
            if injective_embedding(rest, d, used) {
                return true;
            }
            used[j] = false;
        }
    }
    false
}

/// All terms of depth at most `depth` over `consts`, unary `f` and the given
/// rigid variables.
pub fn term_universe(rigid_vars: &[u32], depth: usize) -> Vec<Term> {
    let mut level: Vec<Term> = std::iter::once(Term::constant("a")).chain(rigid_vars.iter().map(|v| Term::Var(*v))).collect();
    let mut all = level.clone();
    for _ in 0..depth {
        level = level.iter().map(|t| Term::app("f", vec![t.clone()])).collect();
        all.extend(level.iter().cloned());
    }
    all
}

pub fn clauses(src: &[&str]) -> Vec<Clause> {
    src.iter().map(|s| proofscope::tptp::parse_clause(s).unwrap()).collect()
}
