pub mod cli;
pub mod kernel;
pub mod minimize;
pub mod oracle;
pub mod proof;
pub mod report;
pub mod saturation;
pub mod syntax;
pub mod tptp;

pub use syntax::{Clause, Literal, Symbol, Term, Var};
