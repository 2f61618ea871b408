//! Unification, inference rules, subsumption and canonical forms.

mod canonical;
mod infer;
mod subsume;
mod unify;

pub use canonical::{canonical_clause, is_variant};
pub use infer::{factor, is_tautology, rename_apart, resolve, resolvents};
pub use subsume::subsumes;
pub use unify::{unify, unify_atoms, Substitution};
