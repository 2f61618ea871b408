//! First-order terms, literals and clauses.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// An interned-by-value symbol name. Ordering is lexicographic on the name.
#[derive(Clone, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_equality(&self) -> bool {
        &*self.0 == "="
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Symbol {
    /// Whether the name prints without single quotes.
    pub fn is_plain(&self) -> bool {
        let s = self.as_str();
        let mut chars = s.chars();
        match chars.next() {
            Some(c) if c.is_ascii_lowercase() || c == '$' => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
            Some(c) if c.is_ascii_digit() => chars.all(|c| c.is_ascii_digit()),
            _ => s == "=",
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_plain() {
            return f.write_str(&self.0);
        }
        f.write_str("'")?;
        for c in self.0.chars() {
            if c == '\\' || c == '\'' {
                f.write_str("\\")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("'")
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

/// Variables are clause-local indices.
pub type Var = u32;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    /// Function application; constants have no arguments.
    App(Symbol, Vec<Term>),
}

impl Term {
    pub fn var(v: Var) -> Self {
        Term::Var(v)
    }

    pub fn constant(name: &str) -> Self {
        Term::App(Symbol::new(name), Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Self {
        Term::App(Symbol::new(name), args)
    }

    /// Symbol count, variables included.
    pub fn weight(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::weight).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| a.depth() + 1).max().unwrap_or(0),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn occurs(&self, v: Var) -> bool {
        match self {
            Term::Var(w) => *w == v,
            Term::App(_, args) => args.iter().any(|a| a.occurs(v)),
        }
    }

    pub fn max_var(&self) -> Option<Var> {
        match self {
            Term::Var(v) => Some(*v),
            Term::App(_, args) => args.iter().filter_map(Term::max_var).max(),
        }
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(*v)
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn map_vars(&self, f: &mut impl FnMut(Var) -> Term) -> Term {
        match self {
            Term::Var(v) => f(*v),
            Term::App(s, args) => Term::App(s.clone(), args.iter().map(|a| a.map_vars(f)).collect()),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "V{v}"),
            Term::App(s, args) => {
                write!(f, "{s}")?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub positive: bool,
    pub predicate: Symbol,
    pub args: Vec<Term>,
}

impl Literal {
    pub fn new(positive: bool, predicate: &str, args: Vec<Term>) -> Self {
        Literal { positive, predicate: Symbol::new(predicate), args }
    }

    pub fn pos(predicate: &str, args: Vec<Term>) -> Self {
        Self::new(true, predicate, args)
    }

    pub fn neg(predicate: &str, args: Vec<Term>) -> Self {
        Self::new(false, predicate, args)
    }

    pub fn negated(&self) -> Literal {
        Literal { positive: !self.positive, ..self.clone() }
    }

    pub fn weight(&self) -> usize {
        1 + self.args.iter().map(Term::weight).sum::<usize>()
    }

    /// Same atom, opposite sign.
    pub fn is_complement_of(&self, other: &Literal) -> bool {
        self.positive != other.positive && self.predicate == other.predicate && self.args == other.args
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn map_vars(&self, f: &mut impl FnMut(Var) -> Term) -> Literal {
        Literal {
            positive: self.positive,
            predicate: self.predicate.clone(),
            args: self.args.iter().map(|a| a.map_vars(f)).collect(),
        }
    }

    pub fn max_var(&self) -> Option<Var> {
        self.args.iter().filter_map(Term::max_var).max()
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.predicate.is_equality() && self.args.len() == 2 {
            let op = if self.positive { "=" } else { "!=" };
            return write!(f, "{} {op} {}", self.args[0], self.args[1]);
        }
        if !self.positive {
            f.write_str("-")?;
        }
        write!(f, "{}", self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A disjunction of literals. Variables are local to the clause.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Self {
        Clause { literals }
    }

    pub fn empty() -> Self {
        Clause { literals: Vec::new() }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn into_literals(self) -> Vec<Literal> {
        self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.literals.iter().map(Literal::weight).sum()
    }

    pub fn is_ground(&self) -> bool {
        self.literals.iter().all(Literal::is_ground)
    }

    pub fn max_var(&self) -> Option<Var> {
        self.literals.iter().filter_map(Literal::max_var).max()
    }

    /// Variables in order of first occurrence.
    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        for l in &self.literals {
            for a in &l.args {
                a.collect_vars(&mut out);
            }
        }
        out
    }

    pub fn map_vars(&self, mut f: impl FnMut(Var) -> Term) -> Clause {
        Clause { literals: self.literals.iter().map(|l| l.map_vars(&mut f)).collect() }
    }

    /// Removes syntactically repeated literals, keeping first occurrences.
    pub fn dedup_literals(&mut self) {
        let mut seen: Vec<Literal> = Vec::with_capacity(self.literals.len());
        for l in self.literals.drain(..) {
            if !seen.contains(&l) {
                seen.push(l);
            }
        }
        self.literals = seen;
    }

    /// Renumbers variables 0.. in order of first occurrence.
    pub fn normalize_vars(&self) -> Clause {
        let vars = self.vars();
        self.map_vars(|v| Term::Var(vars.iter().position(|w| *w == v).unwrap() as Var))
    }
}

impl From<Vec<Literal>> for Clause {
    fn from(literals: Vec<Literal>) -> Self {
        Clause::new(literals)
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return f.write_str("$false");
        }
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl PartialOrd for Clause {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Clause {
    fn cmp(&self, other: &Self) -> Ordering {
        self.literals.cmp(&other.literals)
    }
}

/// Clauses serialize as their printed form and parse back with the clause reader.
impl serde::Serialize for Clause {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Clause {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        crate::tptp::parse_clause(&text).map_err(serde::de::Error::custom)
    }
}
