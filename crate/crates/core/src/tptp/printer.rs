//! Writes problems back out in the input syntax.

use std::fmt::{self, Write};

use crate::syntax::Symbol;

use super::ast::{FTerm, Formula, Input, Language, ProblemSpec};

impl fmt::Display for FTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FTerm::Var(v) => f.write_str(v),
            FTerm::App(s, xs) => {
                write!(f, "{s}")?;
                if !xs.is_empty() {
                    f.write_str("(")?;
                    for (i, x) in xs.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{x}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

fn atom(f: &mut fmt::Formatter<'_>, p: &Symbol, xs: &[FTerm], positive: bool) -> fmt::Result {
    if p.is_equality() && xs.len() == 2 {
        let op = if positive { "=" } else { "!=" };
        return write!(f, "{} {op} {}", xs[0], xs[1]);
    }
    if !positive {
        f.write_str("~")?;
    }
    write!(f, "{}", FTerm::App(p.clone(), xs.to_vec()))
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, xs: &[Formula], op: &str| -> fmt::Result {
            f.write_str("(")?;
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")
        };
        match self {
            Formula::True => f.write_str("$true"),
            Formula::False => f.write_str("$false"),
            Formula::Atom(p, xs) => atom(f, p, xs, true),
            Formula::Not(a) => match &**a {
                Formula::Atom(p, xs) => atom(f, p, xs, false),
                other => write!(f, "~ {other}"),
            },
            Formula::And(xs) => join(f, xs, "&"),
            Formula::Or(xs) => join(f, xs, "|"),
            Formula::Implies(a, b) => write!(f, "({a} => {b})"),
            Formula::Iff(a, b) => write!(f, "({a} <=> {b})"),
            Formula::Forall(v, body) => write!(f, "(! [{v}] : {body})"),
            Formula::Exists(v, body) => write!(f, "(? [{v}] : {body})"),
        }
    }
}

/// Clause-shaped formulas print as a bare disjunction.
fn clause_body(formula: &Formula) -> String {
    match formula {
        Formula::Or(xs) => xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" | "),
        other => other.to_string(),
    }
}

pub fn print_input(input: &Input) -> String {
    let (kw, body) = match input.language {
        Language::Cnf => ("cnf", clause_body(&input.formula)),
        Language::Fof => ("fof", input.formula.to_string()),
    };
    format!("{kw}({}, {}, {body}).", Symbol::new(&input.label), input.role)
}

/// The whole problem, one annotated formula per line, after `header` lines
/// rendered as `%` comments.
pub fn print_problem(spec: &ProblemSpec, header: &[String]) -> String {
    let mut out = String::new();
    for line in header {
        let _ = writeln!(out, "% {line}");
    }
    for input in &spec.inputs {
        let _ = writeln!(out, "{}", print_input(input));
    }
    out
}
