//! Given-clause saturation that records every refutation it meets.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::kernel::{canonical_clause, factor, is_tautology, resolve, subsumes};
use crate::proof::{extract_proof, proof_fingerprint, proofs_identical, ProofDag};
use crate::syntax::{Clause, Symbol};
use crate::tptp::{ClauseSet, Role};

use super::{ClauseId, ConfigError, DerivationLog, Rule, SearchConfig, SosPolicy};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// The passive set emptied and no limit ever fired.
    Saturated,
    LimitReached,
    ProofsExhaustedByMax,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Saturated => "saturated",
            Status::LimitReached => "limit_reached",
            Status::ProofsExhaustedByMax => "proofs_exhausted_by_max",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Limit {
    MaxWeight,
    MaxGiven,
    MaxKeptClauses,
}

#[derive(Clone, Default, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Counters {
    pub given: usize,
    pub generated: usize,
    pub kept: usize,
    pub discarded_by_subsumption: usize,
    pub back_subsumed: usize,
    pub discarded_by_weight: usize,
    pub discarded_as_tautology: usize,
    /// Every empty clause derived, duplicates included.
    pub empty_clause_occurrences: usize,
    /// Occurrences dropped because an identical proof was already recorded.
    pub duplicate_proofs: usize,
}

#[derive(Clone, Debug)]
pub struct SaturationResult {
    pub status: Status,
    /// The first limit that fired, if any.
    pub limit: Option<Limit>,
    pub refutations: Vec<ProofDag>,
    pub log: DerivationLog,
    pub counters: Counters,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SaturationError {
    #[error("the clause set is empty")]
    NoClauses,
    #[error(transparent)]
    Config(#[from] ConfigError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum State {
    Usable,
    Passive,
    Active,
    Dead,
    /// Logged but never part of the search (empty clauses, discarded inputs).
    Inert,
}

type Key = (bool, Symbol);

struct Entry {
    clause: Clause,
    weight: usize,
    state: State,
}

enum Stop {
    MaxProofs,
    Limit(Limit),
}

struct Engine<'c> {
    config: &'c SearchConfig,
    log: DerivationLog,
    entries: HashMap<ClauseId, Entry>,
    passive: BTreeSet<(usize, ClauseId)>,
    /// Usable and active clauses by literal key, for resolution partners.
    partners: HashMap<Key, Vec<(ClauseId, usize)>>,
    /// Alive clauses (usable, passive, active) by literal key, for subsumption.
    alive_by_key: HashMap<Key, Vec<ClauseId>>,
    refutations: Vec<ProofDag>,
    fingerprints: HashMap<u64, Vec<usize>>,
    counters: Counters,
    weight_fired: bool,
}

fn key(l: &crate::syntax::Literal) -> Key {
    (l.positive, l.predicate.clone())
}

impl<'c> Engine<'c> {
    fn new(config: &'c SearchConfig) -> Self {
        Engine {
            config,
            log: DerivationLog::new(),
            entries: HashMap::new(),
            passive: BTreeSet::new(),
            partners: HashMap::new(),
            alive_by_key: HashMap::new(),
            refutations: Vec::new(),
            fingerprints: HashMap::new(),
            counters: Counters::default(),
            weight_fired: false,
        }
    }

    fn is_alive(&self, id: ClauseId) -> bool {
        matches!(self.entries.get(&id).map(|e| e.state), Some(State::Usable | State::Passive | State::Active))
    }

    fn forward_subsumed(&self, c: &Clause) -> bool {
        // Every subsumer shares at least one literal key with `c`.
        let mut seen = BTreeSet::new();
        for l in c.literals() {
            for &id in self.alive_by_key.get(&key(l)).into_iter().flatten() {
                if seen.insert(id) && self.is_alive(id) && subsumes(&self.entries[&id].clause, c) {
                    return true;
                }
            }
        }
        false
    }

    fn back_subsume(&mut self, new_id: ClauseId, c: &Clause) {
        let Some(rarest) = c
            .literals()
            .iter()
            .map(key)
            .min_by_key(|k| self.alive_by_key.get(k).map_or(0, Vec::len))
        else {
            return;
        };
        let candidates: Vec<ClauseId> = self.alive_by_key.get(&rarest).cloned().unwrap_or_default();
        let mut victims = Vec::new();
        let mut seen = BTreeSet::new();
        for id in candidates {
            if id != new_id && seen.insert(id) && self.is_alive(id) && subsumes(c, &self.entries[&id].clause) {
                victims.push(id);
            }
        }
        for id in victims {
            let e = self.entries.get_mut(&id).unwrap();
            if e.state == State::Passive {
                self.passive.remove(&(e.weight, id));
            }
            e.state = State::Dead;
            self.counters.back_subsumed += 1;
        }
    }

    fn index_alive(&mut self, id: ClauseId) {
        let keys: BTreeSet<Key> = self.entries[&id].clause.literals().iter().map(key).collect();
        for k in keys {
            self.alive_by_key.entry(k).or_default().push(id);
        }
    }

    fn index_partner(&mut self, id: ClauseId) {
        let lits: Vec<Key> = self.entries[&id].clause.literals().iter().map(key).collect();
        for (i, k) in lits.into_iter().enumerate() {
            self.partners.entry(k).or_default().push((id, i));
        }
    }

    fn record_refutation(&mut self, empty_id: ClauseId) -> Option<Stop> {
        self.counters.empty_clause_occurrences += 1;
        let proof = extract_proof(&self.log, empty_id).expect("empty clause was just logged");
        let fp = proof_fingerprint(&proof);
        if self.config.dedup_proofs {
            let seen = self.fingerprints.get(&fp).into_iter().flatten();
            if seen.clone().any(|&k| proofs_identical(&self.refutations[k], &proof)) {
                self.counters.duplicate_proofs += 1;
                return None;
            }
        }
        self.fingerprints.entry(fp).or_default().push(self.refutations.len());
        self.refutations.push(proof);
        match self.config.max_proofs {
            Some(n) if self.refutations.len() >= n => Some(Stop::MaxProofs),
            _ => None,
        }
    }

    fn add_input(&mut self, clause: &Clause, label: &str, sos: bool) -> Option<Stop> {
        let c = canonical_clause(clause);
        let id = self.log.append(c.clone(), Rule::Input, Vec::new(), Some(label.to_string()));
        let weight = c.weight();
        self.entries.insert(id, Entry { clause: c.clone(), weight, state: State::Inert });
        if c.is_empty() {
            return self.record_refutation(id);
        }
        if is_tautology(&c) {
            self.counters.discarded_as_tautology += 1;
            return None;
        }
        if self.forward_subsumed(&c) {
            self.counters.discarded_by_subsumption += 1;
            return None;
        }
        self.back_subsume(id, &c);
        self.index_alive(id);
        let e = self.entries.get_mut(&id).unwrap();
        if sos {
            e.state = State::Passive;
            self.passive.insert((weight, id));
        } else {
            e.state = State::Usable;
            self.index_partner(id);
        }
        None
    }

    fn add_derived(&mut self, raw: Clause, rule: Rule, parents: Vec<ClauseId>) -> Option<Stop> {
        self.counters.generated += 1;
        let c = canonical_clause(&raw);
        if c.is_empty() {
            let id = self.log.append(c.clone(), rule, parents, None);
            self.entries.insert(id, Entry { clause: c, weight: 0, state: State::Inert });
            return self.record_refutation(id);
        }
        if is_tautology(&c) {
            self.counters.discarded_as_tautology += 1;
            return None;
        }
        let weight = c.weight();
        if self.config.max_weight.is_some_and(|m| weight > m) {
            self.counters.discarded_by_weight += 1;
            self.weight_fired = true;
            return None;
        }
        if self.forward_subsumed(&c) {
            self.counters.discarded_by_subsumption += 1;
            return None;
        }
        if self.config.max_kept_clauses.is_some_and(|m| self.counters.kept >= m) {
            return Some(Stop::Limit(Limit::MaxKeptClauses));
        }
        self.counters.kept += 1;
        let id = self.log.append(c.clone(), rule, parents, None);
        self.entries.insert(id, Entry { clause: c.clone(), weight, state: State::Passive });
        self.back_subsume(id, &c);
        self.index_alive(id);
        self.passive.insert((weight, id));
        None
    }

    /// Factors of the given clause and its resolvents with every usable or
    /// active clause, itself included.
    fn inferences(&self, given: ClauseId) -> Vec<(Clause, Rule, Vec<ClauseId>)> {
        let g = &self.entries[&given].clause;
        let mut out = Vec::new();
        for f in factor(g) {
            out.push((f, Rule::Factor, vec![given]));
        }
        for (i, l) in g.literals().iter().enumerate() {
            let complement = (!l.positive, l.predicate.clone());
            for &(other, j) in self.partners.get(&complement).into_iter().flatten() {
                if !self.is_alive(other) {
                    continue;
                }
                // A clause against its own copy: each unordered literal pair once.
                if other == given && j < i {
                    continue;
                }
                if let Some(r) = resolve(g, i, &self.entries[&other].clause, j) {
                    out.push((r, Rule::Resolve, vec![given, other]));
                }
            }
        }
        out
    }

    fn run(&mut self) -> Option<Stop> {
        while let Some((weight, given)) = self.passive.pop_first() {
            if self.config.max_given.is_some_and(|m| self.counters.given >= m) {
                self.passive.insert((weight, given));
                return Some(Stop::Limit(Limit::MaxGiven));
            }
            self.counters.given += 1;
            self.entries.get_mut(&given).unwrap().state = State::Active;
            self.index_partner(given);
            for (clause, rule, parents) in self.inferences(given) {
                if let Some(stop) = self.add_derived(clause, rule, parents) {
                    return Some(stop);
                }
            }
        }
        None
    }
}

/// Runs the given-clause loop over `input` until saturation, a limit, or
/// `max_proofs` distinct refutations.
pub fn saturate(input: &ClauseSet, config: &SearchConfig) -> Result<SaturationResult, SaturationError> {
    config.validate()?;
    if input.clauses.is_empty() {
        return Err(SaturationError::NoClauses);
    }
    let has_conjecture = input.clauses.iter().any(|c| c.role == Role::NegatedConjecture);
    let sos_all = config.sos_policy == SosPolicy::AllInput || !has_conjecture;
    let mut engine = Engine::new(config);
    let mut stop = None;
    for ic in &input.clauses {
        let sos = sos_all || ic.role == Role::NegatedConjecture;
        if let Some(s) = engine.add_input(&ic.clause, &ic.label, sos) {
            stop = Some(s);
            break;
        }
    }
    if stop.is_none() {
        stop = engine.run();
    }
    let (status, limit) = match stop {
        Some(Stop::MaxProofs) => (Status::ProofsExhaustedByMax, engine.weight_fired.then_some(Limit::MaxWeight)),
        Some(Stop::Limit(l)) => (Status::LimitReached, Some(l)),
        None if engine.weight_fired => (Status::LimitReached, Some(Limit::MaxWeight)),
        None => (Status::Saturated, None),
    };
    Ok(SaturationResult { status, limit, refutations: engine.refutations, log: engine.log, counters: engine.counters })
}
