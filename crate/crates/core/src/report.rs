//! Versioned machine-readable reports and their plain-text rendering.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::minimize::{MinimizationResult, Verdict};
use crate::proof::{AnalysisReport, ProofDag, ProofDiff, ProofMetrics};
use crate::saturation::{Counters, InferenceRecord, Limit, SaturationResult, SearchConfig, Status};
use crate::syntax::Clause;
use crate::tptp::ClauseSet;

pub const FORMAT_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Larger proof sets get no shared-clause matrix in the text rendering.
const TEXT_MATRIX_MAX: usize = 30;

/// Where a report came from. Wall time is kept out of it so that reports
/// of identical runs are byte-identical.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<String>,
    pub problem: String,
    /// SHA-256 over the clausified problem.
    pub problem_digest: String,
    pub config: SearchConfig,
    pub tool_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<Limit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counters: Option<Counters>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ProofRecord {
    pub index: usize,
    pub root: usize,
    pub metrics: ProofMetrics,
    pub nodes: Vec<InferenceRecord>,
}

impl ProofRecord {
    pub fn from_dag(index: usize, p: &ProofDag, metrics: ProofMetrics) -> Self {
        ProofRecord { index, root: p.root, metrics, nodes: p.nodes.values().cloned().collect() }
    }

    pub fn to_dag(&self) -> ProofDag {
        ProofDag { nodes: self.nodes.iter().map(|r| (r.id, r.clone())).collect(), root: self.root }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub format_version: u32,
    pub manifest: RunManifest,
    pub proof_count: usize,
    pub raw_empty_clause_occurrences: usize,
    pub proofs: Vec<ProofRecord>,
    pub spectrum: std::collections::BTreeMap<usize, usize>,
    pub identity: Vec<Vec<bool>>,
    pub shared: Vec<Vec<usize>>,
    pub common_core: Vec<Clause>,
    pub diffs: Vec<ProofDiff>,
    pub diffs_truncated: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MinimizationReport {
    pub format_version: u32,
    pub manifest: RunManifest,
    pub premises: usize,
    pub result: MinimizationResult,
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("not a report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format_version {0}, expected {FORMAT_VERSION}")]
    Version(u32),
}

/// Stable digest of a clause set: roles and printed clauses in order.
pub fn problem_digest(set: &ClauseSet) -> String {
    let mut h = Sha256::new();
    for ic in &set.clauses {
        h.update(ic.role.as_str().as_bytes());
        h.update(b" ");
        h.update(ic.clause.to_string().as_bytes());
        h.update(b"\n");
    }
    h.finalize().iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

impl EnumerationReport {
    pub fn new(manifest: RunManifest, result: &SaturationResult, analysis: AnalysisReport) -> Self {
        let proofs = result
            .refutations
            .iter()
            .zip(&analysis.metrics)
            .enumerate()
            .map(|(i, (p, m))| ProofRecord::from_dag(i + 1, p, *m))
            .collect();
        EnumerationReport {
            format_version: FORMAT_VERSION,
            manifest,
            proof_count: result.refutations.len(),
            raw_empty_clause_occurrences: result.counters.empty_clause_occurrences,
            proofs,
            spectrum: analysis.spectrum,
            identity: analysis.identity,
            shared: analysis.shared,
            common_core: analysis.common_core,
            diffs: analysis.diffs,
            diffs_truncated: analysis.diffs_truncated,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let version = value.get("format_version").and_then(serde_json::Value::as_u64).unwrap_or(0) as u32;
        if version != FORMAT_VERSION {
            return Err(ReportError::Version(version));
        }
        Ok(serde_json::from_value(value)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn dags(&self) -> Vec<ProofDag> {
        self.proofs.iter().map(ProofRecord::to_dag).collect()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let m = &self.manifest;
        let _ = writeln!(out, "proofscope {}  {}  {}", m.tool_version, m.command, m.inputs.join(" "));
        let _ = writeln!(out, "problem: {}  digest: {}", m.problem, &m.problem_digest[..16.min(m.problem_digest.len())]);
        let status = m.status.map_or_else(|| "-".to_string(), |s| s.to_string());
        let limit = m.limit.map(|l| format!(" ({})", limit_name(l))).unwrap_or_default();
        let _ = writeln!(
            out,
            "status: {status}{limit}, {}, {} empty clause occurrences",
            count(self.proof_count, "proof"),
            self.raw_empty_clause_occurrences
        );
        if let Some(c) = &m.counters {
            let _ = writeln!(
                out,
                "counters: given {}, generated {}, kept {}, forward-subsumed {}, back-subsumed {}, over weight {}, tautologies {}, duplicate proofs {}",
                c.given,
                c.generated,
                c.kept,
                c.discarded_by_subsumption,
                c.back_subsumed,
                c.discarded_by_weight,
                c.discarded_as_tautology,
                c.duplicate_proofs
            );
        }
        if self.proofs.is_empty() {
            return out;
        }
        out.push('\n');
        let _ = writeln!(out, "{:>5}  {:>6}  {:>6}  {:>7}  {:>10}  {:>5}", "proof", "length", "inputs", "derived", "max_weight", "depth");
        for p in &self.proofs {
            let x = &p.metrics;
            let _ = writeln!(
                out,
                "{:>5}  {:>6}  {:>6}  {:>7}  {:>10}  {:>5}",
                p.index, x.length, x.input_count, x.derived_count, x.max_clause_weight, x.depth
            );
        }
        let spectrum: Vec<String> = self.spectrum.iter().map(|(l, n)| format!("{l}:{n}")).collect();
        let _ = writeln!(out, "\nspectrum (length:count): {}", spectrum.join(" "));
        let _ = writeln!(out, "common core: {} clauses", self.common_core.len());
        for c in &self.common_core {
            let _ = writeln!(out, "  {c}");
        }
        let n = self.proofs.len();
        if n > TEXT_MATRIX_MAX {
            let _ = writeln!(out, "\nshared clause matrix omitted for more than {TEXT_MATRIX_MAX} proofs");
        } else if n > 1 {
            let width = n.to_string().len().max(self.shared.iter().flatten().max().map_or(1, |k| k.to_string().len()));
            let _ = writeln!(out, "\nshared clauses (identical proofs marked *):");
            for i in 0..n {
                let row: Vec<String> = (0..n)
                    .map(|j| {
                        let mark = if i != j && self.identity[i][j] { "*" } else { " " };
                        format!("{:>width$}{mark}", self.shared[i][j])
                    })
                    .collect();
                let _ = writeln!(out, "{:>width$} | {}", i + 1, row.join(" ").trim_end());
            }
        }
        for d in &self.diffs {
            out.push('\n');
            out.push_str(&render_diff(d, d.a + 1, d.b + 1));
        }
        if self.diffs_truncated {
            let _ = writeln!(out, "\n(further pairwise diffs omitted)");
        }
        out.push('\n');
        for p in &self.proofs {
            let _ = writeln!(out, "proof {} ({} clauses):", p.index, p.metrics.length);
            for r in &p.nodes {
                let _ = writeln!(out, "  {r}");
            }
        }
        out
    }
}

/// `1 proof`, `2 proofs`.
pub fn count(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

fn limit_name(l: Limit) -> &'static str {
    match l {
        Limit::MaxWeight => "max_weight",
        Limit::MaxGiven => "max_given",
        Limit::MaxKeptClauses => "max_kept_clauses",
    }
}

/// Text form of a diff between proofs numbered `a` and `b`.
pub fn render_diff(d: &ProofDiff, a: usize, b: usize) -> String {
    let mut out = String::new();
    if d.identical {
        let _ = writeln!(out, "proofs {a} and {b}: identical");
        return out;
    }
    let _ = writeln!(
        out,
        "proofs {a} and {b}: {} shared, {} only in {a}, {} only in {b}{}",
        d.shared.len(),
        d.only_in_a.len(),
        d.only_in_b.len(),
        if d.final_step_only { ", differ only at the final step" } else { "" }
    );
    for c in &d.only_in_a {
        let _ = writeln!(out, "  < {c}");
    }
    for c in &d.only_in_b {
        let _ = writeln!(out, "  > {c}");
    }
    out
}

impl MinimizationReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let m = &self.manifest;
        let r = &self.result;
        let _ = writeln!(out, "proofscope {}  {}  {}", m.tool_version, m.command, m.inputs.join(" "));
        let _ = writeln!(out, "kept {} of {} premises after {} probes", r.kept.len(), self.premises, r.probes);
        let _ = writeln!(out, "kept: {}", r.kept.join(", "));
        let _ = writeln!(out, "removed: {}", if r.removed.is_empty() { "none".to_string() } else { r.removed.join(", ") });
        let width = r.verdicts.keys().map(String::len).max().unwrap_or(0);
        for (label, v) in &r.verdicts {
            let v = match v {
                Verdict::Needed => "needed",
                Verdict::Redundant => "redundant",
                Verdict::Unknown => "unknown (limit hit, kept)",
            };
            let _ = writeln!(out, "  {label:<width$}  {v}");
        }
        if let Some(ex) = &r.exhaustive {
            if ex.cardinality_gap {
                let _ = writeln!(
                    out,
                    "cardinality gap: exhaustive search found a sufficient subset of {}: {}",
                    ex.minimum.len(),
                    ex.minimum.join(", ")
                );
            } else {
                let _ = writeln!(out, "exhaustive search: no smaller sufficient subset");
            }
        }
        out
    }
}
