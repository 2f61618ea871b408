//! Clause normal form: negate the conjecture, eliminate implications, push
//! negations inward, Skolemize, distribute.

use std::collections::{BTreeMap, BTreeSet};

use crate::kernel::is_tautology;
use crate::syntax::{Clause, Literal, Symbol, Term, Var};

use super::ast::{FTerm, Formula, ProblemSpec, Role, Signature};
use super::FrontendError;

#[derive(Clone, Debug)]
pub struct ClausifyOptions {
    /// Per-input limit on the number of clauses distribution may produce.
    pub max_clauses: usize,
}

impl Default for ClausifyOptions {
    fn default() -> Self {
        ClausifyOptions { max_clauses: 10_000 }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InputClause {
    pub clause: Clause,
    pub role: Role,
    /// Label of the originating input (or of the equality axiom).
    pub label: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ClauseSet {
    pub clauses: Vec<InputClause>,
    pub signature: Signature,
}

impl ClauseSet {
    pub fn from_clauses(clauses: impl IntoIterator<Item = (Clause, Role, String)>) -> Self {
        let clauses: Vec<InputClause> =
            clauses.into_iter().map(|(clause, role, label)| InputClause { clause, role, label }).collect();
        let signature = signature_of(clauses.iter().map(|c| &c.clause));
        ClauseSet { clauses, signature }
    }

    pub fn uses_equality(&self) -> bool {
        self.clauses.iter().any(|c| c.clause.literals().iter().any(|l| l.predicate.is_equality()))
    }
}

#[derive(Clone, Debug)]
enum Nnf {
    True,
    False,
    Lit(bool, Symbol, Vec<FTerm>),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
    Forall(String, Box<Nnf>),
    Exists(String, Box<Nnf>),
}

fn nnf(f: &Formula, positive: bool) -> Nnf {
    match (f, positive) {
        (Formula::True, true) | (Formula::False, false) => Nnf::True,
        (Formula::True, false) | (Formula::False, true) => Nnf::False,
        (Formula::Atom(p, xs), s) => Nnf::Lit(s, p.clone(), xs.clone()),
        (Formula::Not(a), s) => nnf(a, !s),
        (Formula::And(xs), true) | (Formula::Or(xs), false) => and(xs.iter().map(|x| nnf(x, positive)).collect()),
        (Formula::Or(xs), true) | (Formula::And(xs), false) => or(xs.iter().map(|x| nnf(x, positive)).collect()),
        (Formula::Implies(a, b), true) => or(vec![nnf(a, false), nnf(b, true)]),
        (Formula::Implies(a, b), false) => and(vec![nnf(a, true), nnf(b, false)]),
        (Formula::Iff(a, b), true) => and(vec![
            or(vec![nnf(a, false), nnf(b, true)]),
            or(vec![nnf(a, true), nnf(b, false)]),
        ]),
        (Formula::Iff(a, b), false) => and(vec![
            or(vec![nnf(a, true), nnf(b, true)]),
            or(vec![nnf(a, false), nnf(b, false)]),
        ]),
        (Formula::Forall(v, body), true) | (Formula::Exists(v, body), false) => {
            Nnf::Forall(v.clone(), Box::new(nnf(body, positive)))
        }
        (Formula::Exists(v, body), true) | (Formula::Forall(v, body), false) => {
            Nnf::Exists(v.clone(), Box::new(nnf(body, positive)))
        }
    }
}

fn and(xs: Vec<Nnf>) -> Nnf {
    let mut out = Vec::new();
    for x in xs {
        match x {
            Nnf::True => {}
            Nnf::False => return Nnf::False,
            Nnf::And(ys) => out.extend(ys),
            x => out.push(x),
        }
    }
    match out.len() {
        0 => Nnf::True,
        1 => out.pop().unwrap(),
        _ => Nnf::And(out),
    }
}

fn or(xs: Vec<Nnf>) -> Nnf {
    let mut out = Vec::new();
    for x in xs {
        match x {
            Nnf::False => {}
            Nnf::True => return Nnf::True,
            Nnf::Or(ys) => out.extend(ys),
            x => out.push(x),
        }
    }
    match out.len() {
        0 => Nnf::False,
        1 => out.pop().unwrap(),
        _ => Nnf::Or(out),
    }
}

/// Quantifier-free matrix after Skolemization.
enum Matrix {
    True,
    False,
    Lit(Literal),
    And(Vec<Matrix>),
    Or(Vec<Matrix>),
}

struct Skolemizer<'a> {
    next_skolem: &'a mut usize,
    taken: &'a BTreeSet<Symbol>,
    introduced: &'a mut BTreeMap<Symbol, usize>,
    next_var: Var,
}

impl Skolemizer<'_> {
    fn fresh_skolem(&mut self) -> Symbol {
        loop {
            let name = Symbol::new(&format!("sk{}", *self.next_skolem));
            *self.next_skolem += 1;
            if !self.taken.contains(&name) {
                return name;
            }
        }
    }

    fn term(&self, t: &FTerm, env: &[(String, Term)]) -> Term {
        match t {
            FTerm::Var(v) => env
                .iter()
                .rev()
                .find(|(n, _)| n == v)
                .map(|(_, t)| t.clone())
                .expect("formula closed before Skolemization"),
            FTerm::App(f, xs) => Term::App(f.clone(), xs.iter().map(|x| self.term(x, env)).collect()),
        }
    }

    fn run(&mut self, f: &Nnf, env: &mut Vec<(String, Term)>, universals: &mut Vec<Term>) -> Matrix {
        match f {
            Nnf::True => Matrix::True,
            Nnf::False => Matrix::False,
            Nnf::Lit(s, p, xs) => Matrix::Lit(Literal {
                positive: *s,
                predicate: p.clone(),
                args: xs.iter().map(|x| self.term(x, env)).collect(),
            }),
            Nnf::And(xs) => Matrix::And(xs.iter().map(|x| self.run(x, env, universals)).collect()),
            Nnf::Or(xs) => Matrix::Or(xs.iter().map(|x| self.run(x, env, universals)).collect()),
            Nnf::Forall(v, body) => {
                let t = Term::Var(self.next_var);
                self.next_var += 1;
                env.push((v.clone(), t.clone()));
                universals.push(t);
                let m = self.run(body, env, universals);
                universals.pop();
                env.pop();
                m
            }
            Nnf::Exists(v, body) => {
                let sk = self.fresh_skolem();
                self.introduced.insert(sk.clone(), universals.len());
                env.push((v.clone(), Term::App(sk, universals.clone())));
                let m = self.run(body, env, universals);
                env.pop();
                m
            }
        }
    }
}

fn distribute(m: &Matrix, limit: usize, label: &str) -> Result<Vec<Vec<Literal>>, FrontendError> {
    let too_big = || FrontendError::ClauseBound { label: label.to_string(), limit };
    match m {
        Matrix::True => Ok(Vec::new()),
        Matrix::False => Ok(vec![Vec::new()]),
        Matrix::Lit(l) => Ok(vec![vec![l.clone()]]),
        Matrix::And(xs) => {
            let mut out = Vec::new();
            for x in xs {
                out.extend(distribute(x, limit, label)?);
                if out.len() > limit {
                    return Err(too_big());
                }
            }
            Ok(out)
        }
        Matrix::Or(xs) => {
            let mut acc: Vec<Vec<Literal>> = vec![Vec::new()];
            for x in xs {
                let part = distribute(x, limit, label)?;
                if acc.len().saturating_mul(part.len()) > limit {
                    return Err(too_big());
                }
                let mut next = Vec::with_capacity(acc.len() * part.len());
                for a in &acc {
                    for b in &part {
                        let mut c = a.clone();
                        c.extend(b.iter().cloned());
                        next.push(c);
                    }
                }
                acc = next;
            }
            Ok(acc)
        }
    }
}

fn symbols_in(t: &Term, out: &mut BTreeMap<Symbol, usize>) {
    if let Term::App(f, xs) = t {
        out.insert(f.clone(), xs.len());
        xs.iter().for_each(|x| symbols_in(x, out));
    }
}

pub(crate) fn signature_of<'a>(clauses: impl Iterator<Item = &'a Clause>) -> Signature {
    let mut sig = Signature::default();
    for c in clauses {
        for l in c.literals() {
            if !l.predicate.is_equality() {
                sig.predicates.insert(l.predicate.clone(), l.args.len());
            }
            l.args.iter().for_each(|a| symbols_in(a, &mut sig.functions));
        }
    }
    sig
}

/// Reflexivity, symmetry, transitivity and one substitution axiom per
/// argument position of every function and predicate symbol.
pub fn equality_axioms(sig: &Signature) -> Vec<(Clause, String)> {
    let eq = |positive: bool, a: Term, b: Term| Literal { positive, predicate: Symbol::new("="), args: vec![a, b] };
    let (x, y, z) = (Term::Var(0), Term::Var(1), Term::Var(2));
    let mut out = vec![
        (Clause::new(vec![eq(true, x.clone(), x.clone())]), "eq_reflexivity".to_string()),
        (Clause::new(vec![eq(false, x.clone(), y.clone()), eq(true, y.clone(), x.clone())]), "eq_symmetry".to_string()),
        (
            Clause::new(vec![eq(false, x.clone(), y.clone()), eq(false, y.clone(), z.clone()), eq(true, x.clone(), z)]),
            "eq_transitivity".to_string(),
        ),
    ];
    let args_with = |n: usize, i: usize, at: Term| -> Vec<Term> {
        (0..n).map(|k| if k == i { at.clone() } else { Term::Var(k as Var + 2) }).collect()
    };
    for (f, &n) in &sig.functions {
        for i in 0..n {
            out.push((
                Clause::new(vec![
                    eq(false, x.clone(), y.clone()),
                    eq(true, Term::App(f.clone(), args_with(n, i, x.clone())), Term::App(f.clone(), args_with(n, i, y.clone()))),
                ]),
                format!("eq_congruence_{}_{}", f.as_str(), i + 1),
            ));
        }
    }
    for (p, &n) in &sig.predicates {
        for i in 0..n {
            out.push((
                Clause::new(vec![
                    eq(false, x.clone(), y.clone()),
                    Literal { positive: false, predicate: p.clone(), args: args_with(n, i, x.clone()) },
                    Literal { positive: true, predicate: p.clone(), args: args_with(n, i, y.clone()) },
                ]),
                format!("eq_congruence_{}_{}", p.as_str(), i + 1),
            ));
        }
    }
    out.into_iter().map(|(c, l)| (c.normalize_vars(), l)).collect()
}

/// Direct conversion of a clause-shaped formula; `None` if it contains `$true`.
pub(crate) fn clause_from_cnf(f: &Formula) -> Option<Clause> {
    let parts: Vec<&Formula> = match f {
        Formula::Or(xs) => xs.iter().collect(),
        other => vec![other],
    };
    let mut names: Vec<String> = Vec::new();
    fn term(t: &FTerm, names: &mut Vec<String>) -> Term {
        match t {
            FTerm::Var(v) => {
                let i = names.iter().position(|n| n == v).unwrap_or_else(|| {
                    names.push(v.clone());
                    names.len() - 1
                });
                Term::Var(i as Var)
            }
            FTerm::App(f, xs) => Term::App(f.clone(), xs.iter().map(|x| term(x, names)).collect()),
        }
    }
    let mut lits = Vec::new();
    for part in parts {
        let (positive, inner) = match part {
            Formula::Not(a) => (false, &**a),
            other => (true, other),
        };
        match (inner, positive) {
            (Formula::Atom(p, xs), _) => lits.push(Literal {
                positive,
                predicate: p.clone(),
                args: xs.iter().map(|x| term(x, &mut names)).collect(),
            }),
            (Formula::False, true) | (Formula::True, false) => {}
            _ => return None,
        }
    }
    Some(Clause::new(lits))
}

pub fn clausify(spec: &ProblemSpec) -> Result<ClauseSet, FrontendError> {
    clausify_with(spec, &ClausifyOptions::default())
}

pub fn clausify_with(spec: &ProblemSpec, opts: &ClausifyOptions) -> Result<ClauseSet, FrontendError> {
    let taken: BTreeSet<Symbol> = spec.signature.functions.keys().cloned().collect();
    let mut next_skolem = 0usize;
    let mut introduced = BTreeMap::new();
    let mut clauses = Vec::new();
    for input in &spec.inputs {
        let closed = input.formula.clone().closed();
        let (formula, role) = match input.role {
            Role::Conjecture => (Formula::not(closed), Role::NegatedConjecture),
            r => (closed, r),
        };
        let normal = nnf(&formula, true);
        let mut sk = Skolemizer { next_skolem: &mut next_skolem, taken: &taken, introduced: &mut introduced, next_var: 0 };
        let matrix = sk.run(&normal, &mut Vec::new(), &mut Vec::new());
        for lits in distribute(&matrix, opts.max_clauses, &input.label)? {
            let mut c = Clause::new(lits);
            c.dedup_literals();
            if is_tautology(&c) {
                continue;
            }
            clauses.push(InputClause { clause: c.normalize_vars(), role, label: input.label.clone() });
        }
    }
    let mut set = ClauseSet { signature: signature_of(clauses.iter().map(|c| &c.clause)), clauses };
    if set.uses_equality() {
        for (clause, label) in equality_axioms(&set.signature) {
            set.clauses.push(InputClause { clause, role: Role::Axiom, label });
        }
    }
    Ok(set)
}
