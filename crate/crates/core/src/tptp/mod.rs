//! TPTP-style problem syntax and clausification.

mod ast;
mod clausify;
mod parser;
mod printer;

pub use ast::{FTerm, Formula, Input, Language, ProblemSpec, Role, Signature};
pub use clausify::{clausify, clausify_with, equality_axioms, ClauseSet, ClausifyOptions, InputClause};
pub use parser::{load_problem, parse_problem, FileResolver, IncludeResolver};
pub use printer::{print_input, print_problem};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrontendError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{line}:{col}: unsupported: {what}")]
    Unsupported { line: usize, col: usize, what: String },
    #[error("{line}:{col}: symbol '{symbol}' used with arity {found}, previously {expected}")]
    ArityClash { symbol: String, expected: usize, found: usize, line: usize, col: usize },
    #[error("{line}:{col}: duplicate label '{label}'")]
    DuplicateLabel { label: String, line: usize, col: usize },
    #[error("second conjecture '{label}'; at most one is allowed")]
    MultipleConjectures { label: String },
    #[error("include '{path}': {reason}")]
    Include { path: String, reason: String },
    #[error("{path}: {reason}")]
    Io { path: String, reason: String },
    #[error("input '{label}' produces more than {limit} clauses")]
    ClauseBound { label: String, limit: usize },
}

impl FrontendError {
    pub(crate) fn syntax(line: usize, col: usize, message: impl Into<String>) -> Self {
        FrontendError::Syntax { line, col, message: message.into() }
    }
}

/// Parses a single clause in `cnf` body syntax, e.g. `c(f(A,B)) | -d(A)`.
/// Variables are numbered in order of first occurrence; literal order and
/// repeats are kept as written.
pub fn parse_clause(text: &str) -> Result<crate::syntax::Clause, FrontendError> {
    let spec = parse_problem(&format!("cnf(c, axiom, {text})."))?;
    clausify::clause_from_cnf(&spec.inputs[0].formula)
        .ok_or_else(|| FrontendError::syntax(1, 1, "$true cannot occur in a clause"))
}
