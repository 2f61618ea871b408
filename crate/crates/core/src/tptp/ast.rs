//! Pre-clausal problem representation.

use std::collections::BTreeMap;
use std::fmt;

use crate::syntax::Symbol;

/// Term with named variables, as written in the source.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FTerm {
    Var(String),
    App(Symbol, Vec<FTerm>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Formula {
    True,
    False,
    Atom(Symbol, Vec<FTerm>),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(v: &str, body: Formula) -> Formula {
        Formula::Forall(v.to_string(), Box::new(body))
    }

    pub fn exists(v: &str, body: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(body))
    }

    pub fn atom(p: &str, args: Vec<FTerm>) -> Formula {
        Formula::Atom(Symbol::new(p), args)
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        fn term(t: &FTerm, bound: &[String], out: &mut Vec<String>) {
            match t {
                FTerm::Var(v) => {
                    if !bound.contains(v) && !out.contains(v) {
                        out.push(v.clone())
                    }
                }
                FTerm::App(_, xs) => xs.iter().for_each(|x| term(x, bound, out)),
            }
        }
        fn go(f: &Formula, bound: &mut Vec<String>, out: &mut Vec<String>) {
            match f {
                Formula::True | Formula::False => {}
                Formula::Atom(_, xs) => xs.iter().for_each(|x| term(x, bound, out)),
                Formula::Not(a) => go(a, bound, out),
                Formula::And(xs) | Formula::Or(xs) => xs.iter().for_each(|x| go(x, bound, out)),
                Formula::Implies(a, b) | Formula::Iff(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Formula::Forall(v, body) | Formula::Exists(v, body) => {
                    bound.push(v.clone());
                    go(body, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Universal closure over the free variables.
    pub fn closed(self) -> Formula {
        let free = self.free_vars();
        free.iter().rev().fold(self, |acc, v| Formula::Forall(v.clone(), Box::new(acc)))
    }

    pub fn has_quantifier(&self) -> bool {
        match self {
            Formula::Forall(..) | Formula::Exists(..) => true,
            Formula::True | Formula::False | Formula::Atom(..) => false,
            Formula::Not(a) => a.has_quantifier(),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().any(Formula::has_quantifier),
            Formula::Implies(a, b) | Formula::Iff(a, b) => a.has_quantifier() || b.has_quantifier(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Axiom,
    Hypothesis,
    NegatedConjecture,
    Conjecture,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Axiom => "axiom",
            Role::Hypothesis => "hypothesis",
            Role::NegatedConjecture => "negated_conjecture",
            Role::Conjecture => "conjecture",
        }
    }

    /// Premises are the inputs a minimizer may drop.
    pub fn is_premise(self) -> bool {
        matches!(self, Role::Axiom | Role::Hypothesis)
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Language {
    Cnf,
    Fof,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Input {
    pub label: String,
    pub role: Role,
    pub language: Language,
    pub formula: Formula,
}

/// Arities of every predicate and function symbol in a problem.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Signature {
    pub predicates: BTreeMap<Symbol, usize>,
    pub functions: BTreeMap<Symbol, usize>,
}

#[derive(Clone, PartialEq, Debug, Default)]
pub struct ProblemSpec {
    pub name: String,
    pub inputs: Vec<Input>,
    pub signature: Signature,
}

impl ProblemSpec {
    pub fn conjecture(&self) -> Option<&Input> {
        self.inputs.iter().find(|i| i.role == Role::Conjecture)
    }

    pub fn premise_labels(&self) -> Vec<&str> {
        self.inputs.iter().filter(|i| i.role.is_premise()).map(|i| i.label.as_str()).collect()
    }

    /// Copy keeping only the listed premises; non-premise inputs always stay.
    pub fn restrict_premises(&self, keep: &[&str]) -> ProblemSpec {
        ProblemSpec {
            name: self.name.clone(),
            inputs: self
                .inputs
                .iter()
                .filter(|i| !i.role.is_premise() || keep.contains(&i.label.as_str()))
                .cloned()
                .collect(),
            signature: self.signature.clone(),
        }
    }
}
