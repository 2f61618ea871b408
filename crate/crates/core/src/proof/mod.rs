//! Refutation DAGs and their analysis.

mod analysis;
mod dag;
mod identity;
mod tidy;

pub use analysis::{
    analyze, analyze_with, proof_diff, proof_length, proof_metrics, shared_clauses, AnalysisError, AnalysisOptions,
    AnalysisReport, ProofDiff, ProofMetrics,
};
pub use dag::{check_proof, check_proof_against, extract_proof, is_valid_proof, InvalidProof, ProofDag, ProofError};
pub use identity::{proof_fingerprint, proofs_identical};
pub use tidy::structural_tidy;
