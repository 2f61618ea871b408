//! C ABI over the proofscope prover.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free` function. Functions that can fail return a
//! [`PsStatus`] and leave a message for [`ps_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use proofscope::proof::analyze;
use proofscope::report::{problem_digest, EnumerationReport, RunManifest, TOOL_VERSION};
use proofscope::saturation::{saturate, SaturationError, SearchConfig, SosPolicy, Status};
use proofscope::tptp::{clausify, parse_problem, ClauseSet, ProblemSpec};

/// Result codes of fallible calls.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidConfig = 4,
    NoClauses = 5,
    IndexOutOfRange = 6,
    Internal = 7,
}

/// How a search ended.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsOutcome {
    Saturated = 0,
    LimitReached = 1,
    ProofsExhaustedByMax = 2,
}

/// Search limits; 0 means unlimited.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct PsSearchConfig {
    pub max_proofs: u64,
    pub max_weight: u64,
    pub max_given: u64,
    pub max_kept_clauses: u64,
    /// Nonzero: every input clause is in the set of support.
    pub sos_all_input: i32,
    /// Nonzero: one proof per identity class.
    pub dedup_proofs: i32,
}

/// A parsed and clausified problem.
pub struct PsProblem {
    spec: ProblemSpec,
    clauses: ClauseSet,
}

/// The outcome of one search with its analysis.
pub struct PsResult {
    outcome: PsOutcome,
    report: EnumerationReport,
    log: String,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn guarded(f: impl FnOnce() -> PsStatus) -> PsStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        PsStatus::Internal
    })
}

fn limit(v: u64) -> Option<usize> {
    (v != 0).then(|| usize::try_from(v).unwrap_or(usize::MAX))
}

fn to_u64(v: Option<usize>) -> u64 {
    v.map_or(0, |n| n as u64)
}

fn to_config(c: &PsSearchConfig) -> SearchConfig {
    SearchConfig {
        max_proofs: limit(c.max_proofs),
        max_weight: limit(c.max_weight),
        max_given: limit(c.max_given),
        max_kept_clauses: limit(c.max_kept_clauses),
        sos_policy: if c.sos_all_input != 0 { SosPolicy::AllInput } else { SosPolicy::NegatedConjectureOnly },
        dedup_proofs: c.dedup_proofs != 0,
    }
}

fn to_c_string(s: &str) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// The default limits of the command line tool.
#[no_mangle]
pub extern "C" fn ps_search_config_default() -> PsSearchConfig {
    let d = SearchConfig::default();
    PsSearchConfig {
        max_proofs: to_u64(d.max_proofs),
        max_weight: to_u64(d.max_weight),
        max_given: to_u64(d.max_given),
        max_kept_clauses: to_u64(d.max_kept_clauses),
        sos_all_input: 0,
        dedup_proofs: 1,
    }
}

/// Static version string.
#[no_mangle]
pub extern "C" fn ps_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version contains a nul byte"),
    };
    VERSION.as_ptr()
}

/// Message of the last failed call on this thread. Valid until the next
/// failing call on the same thread; never null.
#[no_mangle]
pub extern "C" fn ps_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses and clausifies a self-contained problem (no `include`).
///
/// # Safety
/// `source` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ps_problem_parse(source: *const c_char, out: *mut *mut PsProblem) -> PsStatus {
    guarded(|| {
        if source.is_null() || out.is_null() {
            set_error("null pointer argument");
            return PsStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let Ok(text) = CStr::from_ptr(source).to_str() else {
            set_error("source is not valid UTF-8");
            return PsStatus::InvalidUtf8;
        };
        let parsed = parse_problem(text).and_then(|spec| clausify(&spec).map(|clauses| (spec, clauses)));
        match parsed {
            Ok((spec, clauses)) => {
                *out = Box::into_raw(Box::new(PsProblem { spec, clauses }));
                PsStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                PsStatus::ParseError
            }
        }
    })
}

/// Number of clauses after clausification; 0 for a null handle.
///
/// # Safety
/// `problem` must be null or a live handle from [`ps_problem_parse`].
#[no_mangle]
pub unsafe extern "C" fn ps_problem_clause_count(problem: *const PsProblem) -> usize {
    problem.as_ref().map_or(0, |p| p.clauses.clauses.len())
}

/// # Safety
/// `problem` must be null or a handle from [`ps_problem_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ps_problem_free(problem: *mut PsProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Saturates the problem, collecting refutations up to the configured limits.
///
/// # Safety
/// `problem` must be a live handle, `config` null (defaults) or readable,
/// and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ps_enumerate(
    problem: *const PsProblem,
    config: *const PsSearchConfig,
    out: *mut *mut PsResult,
) -> PsStatus {
    guarded(|| {
        if problem.is_null() || out.is_null() {
            set_error("null pointer argument");
            return PsStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let problem = &*problem;
        let config = config.as_ref().map_or_else(SearchConfig::default, to_config);
        let result = match saturate(&problem.clauses, &config) {
            Ok(r) => r,
            Err(e @ SaturationError::NoClauses) => {
                set_error(e.to_string());
                return PsStatus::NoClauses;
            }
            Err(e) => {
                set_error(e.to_string());
                return PsStatus::InvalidConfig;
            }
        };
        let analysis = match analyze(&result.refutations) {
            Ok(a) => a,
            Err(e) => {
                set_error(e.to_string());
                return PsStatus::Internal;
            }
        };
        let manifest = RunManifest {
            command: "enumerate".into(),
            inputs: Vec::new(),
            problem: problem.spec.name.clone(),
            problem_digest: problem_digest(&problem.clauses),
            config: config.clone(),
            tool_version: TOOL_VERSION.into(),
            status: Some(result.status),
            limit: result.limit,
            counters: Some(result.counters.clone()),
        };
        let outcome = match result.status {
            Status::Saturated => PsOutcome::Saturated,
            Status::LimitReached => PsOutcome::LimitReached,
            Status::ProofsExhaustedByMax => PsOutcome::ProofsExhaustedByMax,
        };
        let log = result.log.render();
        let report = EnumerationReport::new(manifest, &result, analysis);
        *out = Box::into_raw(Box::new(PsResult { outcome, report, log }));
        PsStatus::Ok
    })
}

/// # Safety
/// `result` must be a live handle from [`ps_enumerate`].
#[no_mangle]
pub unsafe extern "C" fn ps_result_outcome(result: *const PsResult) -> PsOutcome {
    (*result).outcome
}

/// Number of distinct refutations; 0 for a null handle.
///
/// # Safety
/// `result` must be null or a live handle from [`ps_enumerate`].
#[no_mangle]
pub unsafe extern "C" fn ps_result_proof_count(result: *const PsResult) -> usize {
    result.as_ref().map_or(0, |r| r.report.proof_count)
}

/// Node count of proof `index` (0-based), inputs and empty clause included.
///
/// # Safety
/// `result` must be a live handle and `length` writable.
#[no_mangle]
pub unsafe extern "C" fn ps_result_proof_length(result: *const PsResult, index: usize, length: *mut usize) -> PsStatus {
    guarded(|| {
        let (Some(r), false) = (result.as_ref(), length.is_null()) else {
            set_error("null pointer argument");
            return PsStatus::NullPointer;
        };
        match r.report.proofs.get(index) {
            Some(p) => {
                *length = p.metrics.length;
                PsStatus::Ok
            }
            None => {
                set_error(format!("proof index {index} out of range ({} proofs)", r.report.proofs.len()));
                PsStatus::IndexOutOfRange
            }
        }
    })
}

/// The JSON report. Release with [`ps_string_free`]; null for a null handle.
///
/// # Safety
/// `result` must be null or a live handle from [`ps_enumerate`].
#[no_mangle]
pub unsafe extern "C" fn ps_result_report_json(result: *const PsResult) -> *mut c_char {
    result.as_ref().map_or(ptr::null_mut(), |r| to_c_string(&r.report.to_json()))
}

/// The derivation log, one record per line. Release with [`ps_string_free`].
///
/// # Safety
/// `result` must be null or a live handle from [`ps_enumerate`].
#[no_mangle]
pub unsafe extern "C" fn ps_result_log(result: *const PsResult) -> *mut c_char {
    result.as_ref().map_or(ptr::null_mut(), |r| to_c_string(&r.log))
}

/// # Safety
/// `result` must be null or a handle from [`ps_enumerate`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ps_result_free(result: *mut PsResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ps_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
