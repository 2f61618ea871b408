//! Syntactic unification with occurs check.

use std::collections::BTreeMap;
use std::fmt;

use crate::syntax::{Literal, Term, Var};

/// An idempotent substitution: no bound variable occurs in any binding.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: Var) -> Option<&Term> {
        self.map.get(&v)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.map.iter()
    }

    pub fn apply(&self, t: &Term) -> Term {
        t.map_vars(&mut |v| self.map.get(&v).cloned().unwrap_or(Term::Var(v)))
    }

    pub fn apply_literal(&self, l: &Literal) -> Literal {
        l.map_vars(&mut |v| self.map.get(&v).cloned().unwrap_or(Term::Var(v)))
    }

    pub fn is_idempotent(&self) -> bool {
        self.map.values().all(|t| self.map.keys().all(|v| !t.occurs(*v)))
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "V{v}->{t}")?;
        }
        f.write_str("}")
    }
}

/// Triangular binding store used while solving; resolved into a
/// [`Substitution`] on success.
#[derive(Default)]
pub(crate) struct Bindings {
    slots: Vec<Option<Term>>,
}

impl Bindings {
    pub(crate) fn with_capacity(n: usize) -> Self {
        Bindings { slots: vec![None; n] }
    }

    fn lookup(&self, v: Var) -> Option<&Term> {
        self.slots.get(v as usize).and_then(Option::as_ref)
    }

    fn bind(&mut self, v: Var, t: Term) {
        let i = v as usize;
        if i >= self.slots.len() {
            self.slots.resize(i + 1, None);
        }
        self.slots[i] = Some(t);
    }

    fn walk<'a>(&'a self, mut t: &'a Term) -> &'a Term {
        while let Term::Var(v) = t {
            match self.lookup(*v) {
                Some(b) => t = b,
                None => break,
            }
        }
        t
    }

    fn occurs(&self, v: Var, t: &Term) -> bool {
        match self.walk(t) {
            Term::Var(w) => *w == v,
            Term::App(_, args) => args.iter().any(|a| self.occurs(v, a)),
        }
    }

    pub(crate) fn unify(&mut self, a: &Term, b: &Term) -> bool {
        let a = self.walk(a).clone();
        let b = self.walk(b).clone();
        match (&a, &b) {
            (Term::Var(x), Term::Var(y)) if x == y => true,
            (Term::Var(x), t) | (t, Term::Var(x)) => {
                if self.occurs(*x, t) {
                    return false;
                }
                self.bind(*x, t.clone());
                true
            }
            (Term::App(f, fa), Term::App(g, ga)) => {
                f == g
                    && fa.len() == ga.len()
                    && fa.iter().zip(ga.iter()).all(|(x, y)| self.unify(x, y))
            }
        }
    }

    pub(crate) fn unify_args(&mut self, a: &[Term], b: &[Term]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| self.unify(x, y))
    }

    pub(crate) fn resolve(&self, t: &Term) -> Term {
        match self.walk(t) {
            Term::Var(v) => Term::Var(*v),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| self.resolve(a)).collect()),
        }
    }

    pub(crate) fn resolve_literal(&self, l: &Literal) -> Literal {
        Literal {
            positive: l.positive,
            predicate: l.predicate.clone(),
            args: l.args.iter().map(|a| self.resolve(a)).collect(),
        }
    }

    pub(crate) fn into_substitution(self) -> Substitution {
        let mut map = BTreeMap::new();
        for (i, slot) in self.slots.iter().enumerate() {
            if slot.is_some() {
                map.insert(i as Var, self.resolve(&Term::Var(i as Var)));
            }
        }
        Substitution { map }
    }
}

/// Most general unifier of two terms, or `None`.
pub fn unify(a: &Term, b: &Term) -> Option<Substitution> {
    let mut b_store = Bindings::default();
    b_store.unify(a, b).then(|| b_store.into_substitution())
}

/// Most general unifier of two atoms (signs ignored), or `None`.
pub fn unify_atoms(a: &Literal, b: &Literal) -> Option<Substitution> {
    if a.predicate != b.predicate {
        return None;
    }
    let mut store = Bindings::default();
    store.unify_args(&a.args, &b.args).then(|| store.into_substitution())
}
