//! Criterion-sized checks shared by the acceptance target and the area suites.
//! Each returns a one-line summary on success and the first failure otherwise.

use std::collections::{BTreeSet, HashMap};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use proofscope::kernel::{canonical_clause, subsumes};
use proofscope::minimize::{minimize_premises, verify_minimality};
use proofscope::oracle::{enumerate_refutations_bounded, EnumerationBound};
use proofscope::proof::{check_proof, proof_metrics, proofs_identical, structural_tidy, ProofDag};
use proofscope::saturation::{saturate, ClauseId, Rule, SaturationResult, SearchConfig, SosPolicy, Status};
use proofscope::tptp::{clausify, load_problem, parse_clause, parse_problem, ClauseSet, Role};
use proofscope::{Clause, Literal, Term};
use rand::seq::IndexedRandom;
use rand::Rng;

use super::*;

pub type Check = Result<String, String>;

pub fn problems_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/problems")
}

pub fn suite_problems() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(problems_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "p"))
        .collect();
    files.sort();
    files
}

pub fn axiom_set(cs: &[Clause]) -> ClauseSet {
    ClauseSet::from_clauses(cs.iter().enumerate().map(|(i, c)| (c.clone(), Role::Axiom, format!("c{}", i + 1))))
}

/// Unlimited search with every input in the set of support.
pub fn run_all_input(cs: &[Clause]) -> SaturationResult {
    saturate(&axiom_set(cs), &SearchConfig::unlimited().with_sos(SosPolicy::AllInput)).unwrap()
}

/// Tree unfolding of a DAG with labels dropped and parents sorted. For DAGs
/// without repeated clauses two proofs are isomorphic iff their shapes match.
pub fn shape(p: &ProofDag) -> String {
    fn go(p: &ProofDag, id: ClauseId, memo: &mut HashMap<ClauseId, String>) -> String {
        if let Some(s) = memo.get(&id) {
            return s.clone();
        }
        let r = &p.nodes[&id];
        let mut kids: Vec<String> = r.parents.iter().map(|q| go(p, *q, memo)).collect();
        kids.sort();
        let s = format!("{}<{}>({})", r.rule, r.clause, kids.join(","));
        memo.insert(id, s.clone());
        s
    }
    go(p, p.root, &mut HashMap::new())
}

pub fn repeats_a_clause(p: &ProofDag) -> bool {
    let clauses: BTreeSet<&Clause> = p.nodes.values().map(|r| &r.clause).collect();
    clauses.len() != p.nodes.len()
}

/// Ground sets for the engine/oracle comparison, half satisfiable, half not.
pub fn ground_suite(seed: u64, count: usize) -> Vec<Vec<Clause>> {
    let mut rng = rng(seed);
    let (mut sat, mut unsat) = (Vec::new(), Vec::new());
    let half = count.div_ceil(2);
    while sat.len() < half || unsat.len() < count - half {
        let atoms = rng.random_range(2..=4);
        let set = gen_ground_set(&mut rng, 6, atoms);
        if set.len() < 3 {
            continue;
        }
        if truth_table_sat(&set) {
            if sat.len() < half {
                sat.push(set);
            }
        } else if unsat.len() < count - half {
            unsat.push(set);
        }
    }
    sat.into_iter().zip(unsat).flat_map(|(a, b)| [a, b]).collect()
}

/// Engine finds a refutation iff the oracle does, and every engine
/// refutation is isomorphic to an oracle one.
pub fn oracle_equivalence(seed: u64, count: usize) -> Check {
    let mut slowest = Duration::ZERO;
    let mut proofs = 0;
    for (n, set) in ground_suite(seed, count).iter().enumerate() {
        let start = Instant::now();
        let result = run_all_input(set);
        let found = &result.refutations;
        let max_len = found.iter().map(ProofDag::len).max().unwrap_or(0);
        let max_depth = found.iter().map(|p| proof_metrics(p).depth).max().unwrap_or(0);
        let bound = EnumerationBound::new(max_len.max(7), 64, max_depth.max(4));
        let oracle = enumerate_refutations_bounded(set, bound).map_err(|e| format!("instance {n}: oracle: {e}"))?;
        slowest = slowest.max(start.elapsed());
        let text = set.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        if found.is_empty() != oracle.is_empty() {
            return Err(format!("instance {n} [{text}]: engine {} proofs, oracle {}", found.len(), oracle.len()));
        }
        if found.is_empty() != truth_table_sat(set) {
            return Err(format!("instance {n} [{text}]: engine disagrees with the truth table"));
        }
        let shapes: BTreeSet<String> = oracle.iter().map(shape).collect();
        for p in found {
            if repeats_a_clause(p) {
                return Err(format!("instance {n} [{text}]: engine proof repeats a clause"));
            }
            let iso = shapes.contains(&shape(p));
            if iso != oracle.iter().any(|q| proofs_identical(p, q)) {
                return Err(format!("instance {n} [{text}]: shape and proofs_identical disagree"));
            }
            if !iso {
                return Err(format!("instance {n} [{text}]: engine proof missing from the oracle set"));
            }
        }
        proofs += found.len();
    }
    if slowest > Duration::from_secs(10) {
        return Err(format!("slowest instance took {slowest:?}"));
    }
    Ok(format!("{count} ground sets, {proofs} engine proofs all in the oracle sets, slowest {slowest:.2?}"))
}

fn ground_canonical(c: &Clause) -> bool {
    let keys: Vec<(bool, &str)> = c.literals().iter().map(|l| (!l.positive, l.predicate.as_str())).collect();
    keys.windows(2).all(|w| w[0] < w[1]) && c.literals().iter().all(|l| l.args.is_empty())
}

fn lit_set(c: &Clause) -> BTreeSet<(bool, String)> {
    c.literals().iter().map(|l| (l.positive, l.predicate.to_string())).collect()
}

/// Decides validity of a propositional refutation without the kernel.
pub fn ground_check(p: &ProofDag) -> bool {
    let Some(root) = p.nodes.get(&p.root) else { return false };
    if !root.clause.is_empty() {
        return false;
    }
    if p.nodes.iter().any(|(id, r)| r.id != *id || r.parents.iter().any(|q| !p.nodes.contains_key(q))) {
        return false;
    }
    // Kahn's algorithm; leftovers mean a cycle.
    let mut done: BTreeSet<ClauseId> = BTreeSet::new();
    loop {
        let ready: Vec<ClauseId> = p
            .nodes
            .values()
            .filter(|r| !done.contains(&r.id) && r.parents.iter().all(|q| done.contains(q)))
            .map(|r| r.id)
            .collect();
        if ready.is_empty() {
            break;
        }
        done.extend(ready);
    }
    if done.len() != p.nodes.len() {
        return false;
    }
    p.nodes.values().all(|r| {
        if !ground_canonical(&r.clause) {
            return false;
        }
        match (r.rule, r.parents.as_slice()) {
            (Rule::Input, []) => true,
            (Rule::Resolve, [a, b]) => {
                let (a, b) = (lit_set(&p.nodes[a].clause), lit_set(&p.nodes[b].clause));
                let target = lit_set(&r.clause);
                a.iter().any(|(pos, name)| {
                    let other = (!pos, name.clone());
                    if !b.contains(&other) {
                        return false;
                    }
                    let mut out: BTreeSet<(bool, String)> = a.iter().filter(|l| l.1 != *name || l.0 != *pos).cloned().collect();
                    out.extend(b.iter().filter(|l| **l != other).cloned());
                    out == target
                })
            }
            // A canonical ground clause has no duplicate literals to merge.
            _ => false,
        }
    })
}

/// Parents entail the clause on every interpretation of size 1 and 2 that
/// fits under the cap. `false` only with a concrete counter-model.
pub fn semantically_sound(p: &ProofDag) -> bool {
    p.nodes.values().filter(|r| r.rule != Rule::Input && r.parents.iter().all(|q| p.nodes.contains_key(q))).all(|r| {
        let parents: Vec<&Clause> = r.parents.iter().map(|q| &p.nodes[q].clause).collect();
        let mut all: Vec<Clause> = parents.iter().map(|c| (*c).clone()).collect();
        all.push(r.clause.clone());
        let (funcs, preds) = clause_symbols(&all);
        (1..=2).all(|n| {
            find_model(n, &funcs, &preds, 1 << 16, |i| parents.iter().all(|c| i.clause(c)) && !i.clause(&r.clause)) != Some(true)
        })
    })
}

/// Small corruptions of a proof; some may happen to stay valid.
pub fn mutants(rng: &mut impl Rng, p: &ProofDag, count: usize) -> Vec<ProofDag> {
    let ids: Vec<ClauseId> = p.nodes.keys().copied().collect();
    let derived: Vec<ClauseId> = p.nodes.values().filter(|r| r.rule != Rule::Input).map(|r| r.id).collect();
    let mut out = Vec::new();
    for _ in 0..count {
        let mut m = p.clone();
        let &target = derived.choose(rng).unwrap();
        match rng.random_range(0..5) {
            0 => {
                // Drop or add a literal.
                let r = m.nodes.get_mut(&target).unwrap();
                let mut lits = r.clause.literals().to_vec();
                if !lits.is_empty() && rng.random_bool(0.5) {
                    lits.remove(rng.random_range(0..lits.len()));
                } else {
                    let donor = &p.nodes[ids.choose(rng).unwrap()].clause;
                    match donor.literals().choose(rng) {
                        Some(l) => lits.push(Literal::new(rng.random_bool(0.5), l.predicate.as_str(), l.args.clone())),
                        None => lits.push(Literal::new(true, "extra", vec![])),
                    }
                }
                r.clause = canonical_clause(&Clause::new(lits));
            }
            1 => {
                let donor = p.nodes[ids.choose(rng).unwrap()].clause.clone();
                m.nodes.get_mut(&target).unwrap().clause = donor;
            }
            2 => {
                let r = m.nodes.get_mut(&target).unwrap();
                r.rule = match r.rule {
                    Rule::Resolve => Rule::Factor,
                    _ => Rule::Resolve,
                };
            }
            3 => {
                let r = m.nodes.get_mut(&target).unwrap();
                let i = rng.random_range(0..r.parents.len());
                r.parents[i] = *ids.choose(rng).unwrap();
            }
            _ => {
                // Swap in a fresh parent id that is not in the DAG.
                let r = m.nodes.get_mut(&target).unwrap();
                r.parents.push(ids.iter().max().unwrap() + 1);
            }
        }
        if m != *p {
            out.push(m);
        }
    }
    out
}

/// First-order problems whose refutations feed the validity check.
pub fn first_order_sets() -> Vec<ClauseSet> {
    let mut sets: Vec<ClauseSet> = suite_problems()
        .iter()
        .map(|f| clausify(&load_problem(f, &[]).unwrap()).unwrap())
        .collect();
    let extra = [
        "cnf(a, axiom, p(X) | p(f(X))).\ncnf(b, negated_conjecture, ~p(Y)).",
        "cnf(a, axiom, r(X, Y) | r(Y, X)).\ncnf(b, axiom, ~r(a, Z) | q(Z)).\ncnf(c, negated_conjecture, ~q(a)).",
        "fof(a, axiom, ![X]: ?[Y]: r(X, Y)).\nfof(b, axiom, ![X, Y]: (r(X, Y) => r(Y, X))).\nfof(c, conjecture, ?[X, Y]: (r(X, Y) & r(Y, X))).",
        "cnf(a, axiom, p(X) | q(X)).\ncnf(b, axiom, ~p(X) | q(f(X))).\ncnf(c, axiom, ~q(X) | s(X)).\ncnf(d, negated_conjecture, ~s(f(a))).\ncnf(e, negated_conjecture, ~s(a)).",
    ];
    sets.extend(extra.iter().map(|src| clausify(&parse_problem(src).unwrap()).unwrap()));
    sets
}

/// Every refutation from engine, oracle and tidy passes `check_proof`, and
/// `check_proof` agrees with independent checkers on originals and mutants.
pub fn validity(seed: u64) -> Check {
    let mut rng = rng(seed);
    let mut ground: Vec<ProofDag> = Vec::new();
    let mut first_order: Vec<ProofDag> = Vec::new();
    for set in ground_suite(seed, 30) {
        let found = run_all_input(&set).refutations;
        let oracle = enumerate_refutations_bounded(&set, EnumerationBound::new(7, 64, 4)).map_err(|e| e.to_string())?;
        ground.extend(found.iter().map(structural_tidy));
        ground.extend(found);
        ground.extend(oracle);
    }
    for set in first_order_sets() {
        let config = SearchConfig { max_proofs: Some(20), ..SearchConfig::default() };
        let found = saturate(&set, &config).unwrap().refutations;
        first_order.extend(found.iter().map(structural_tidy));
        first_order.extend(found);
    }
    for (i, p) in ground.iter().chain(&first_order).enumerate() {
        check_proof(p).map_err(|e| format!("proof {i} rejected: {e}"))?;
    }
    for p in &ground {
        if !ground_check(p) {
            return Err(format!("independent checker rejects a proof: {}", shape(p)));
        }
    }
    let (mut mutated, mut rejected) = (0, 0);
    for p in &ground {
        for m in mutants(&mut rng, p, 6) {
            mutated += 1;
            let verdict = check_proof(&m).is_ok();
            if verdict != ground_check(&m) {
                return Err(format!("check_proof says {verdict} on ground mutant {}", shape(&m)));
            }
            rejected += usize::from(!verdict);
        }
    }
    let mut unsound = 0;
    for p in &first_order {
        if !semantically_sound(p) {
            return Err(format!("unsound inference in {}", shape(p)));
        }
        for m in mutants(&mut rng, p, 6) {
            mutated += 1;
            let verdict = check_proof(&m).is_ok();
            rejected += usize::from(!verdict);
            if !semantically_sound(&m) {
                unsound += 1;
                if verdict {
                    return Err(format!("check_proof accepts an unsound mutant {}", shape(&m)));
                }
            }
        }
    }
    if rejected == 0 || unsound == 0 {
        return Err("mutants never exercised a rejection".into());
    }
    Ok(format!(
        "{} proofs valid ({} ground, {} first-order); {mutated} mutants, {rejected} rejected, {unsound} with counter-models",
        ground.len() + first_order.len(),
        ground.len(),
        first_order.len()
    ))
}

pub fn canonical_properties(seed: u64, count: usize) -> Check {
    let mut rng = rng(seed);
    let sig = Sig::rich();
    for n in 0..count {
        let c = gen_clause(&mut rng, &sig, 5, 4, 2);
        let k = canonical_clause(&c);
        if canonical_clause(&k) != k {
            return Err(format!("not idempotent on {c}"));
        }
        for _ in 0..3 {
            let moved = shuffle_and_rename(&mut rng, &c);
            if canonical_clause(&moved) != k {
                return Err(format!("clause {n}: {c} and {moved} canonicalize differently"));
            }
        }
    }
    Ok(format!("{count} clauses, 3 permuted renamings each, 0 failures"))
}

pub fn subsumption_agreement(seed: u64, count: usize) -> Check {
    let sig = Sig::three();
    let mut rng = rng(seed);
    let (mut positive, mut total) = (0, 0);
    while total < count {
        let cl = gen_clause(&mut rng, &sig, 3, 3, 2);
        let d = if rng.random_bool(0.5) {
            // Instances of `cl` with extra literals subsume often.
            let subst: Vec<Term> = (0..3).map(|_| gen_term(&mut rng, &sig, 2, 1)).collect();
            let mut lits = cl.map_vars(|v| subst[v as usize].clone().map_vars(&mut |w| Term::Var(w + 10))).into_literals();
            if rng.random_bool(0.5) {
                lits.push(gen_literal(&mut rng, &sig, 0, 2));
            }
            if rng.random_bool(0.3) && lits.len() > 1 {
                lits.pop();
            }
            Clause::new(lits)
        } else {
            gen_clause(&mut rng, &sig, 3, 2, 2).map_vars(|v| Term::Var(v + 10))
        };
        // Only pairs inside the depth-2 universe are decided exactly by the oracle.
        if d.literals().iter().flat_map(|l| &l.args).any(|t| t.depth() > 2) {
            continue;
        }
        total += 1;
        let expected = brute_subsumes(&cl, &d, &term_universe(&d.vars(), 2));
        positive += usize::from(expected);
        if subsumes(&cl, &d) != expected {
            return Err(format!("subsumes({cl}, {d}) should be {expected}"));
        }
    }
    if positive * 5 < count {
        return Err(format!("only {positive} subsuming pairs"));
    }
    Ok(format!("{count} pairs ({positive} subsuming) match exhaustive substitution search"))
}

fn clause_list(src: &str) -> Vec<Clause> {
    clausify(&parse_problem(src).unwrap()).unwrap().clauses.into_iter().map(|c| c.clause).collect()
}

pub fn propositional_equisat(seed: u64, count: usize) -> Check {
    let mut rng = rng(seed);
    for _ in 0..count {
        let f = gen_prop_formula(&mut rng, 5, 4);
        let cs = clause_list(&format!("fof(f, axiom, {f})."));
        let (_, preds) = formula_symbols(&f);
        let f_sat = find_model(1, &[], &preds, u128::MAX, |i| i.formula(&f, &mut HashMap::new())).unwrap();
        if truth_table_sat(&cs) != f_sat {
            return Err(format!("{f}: formula sat {f_sat}, clauses disagree"));
        }
    }
    Ok(format!("{count} quantifier-free formulas agree with truth tables"))
}

/// Quantified formulas whose model spaces fit under `cap` on domains 1..=3.
pub fn quantified_equisat(seed: u64, count: usize, cap: u128) -> Check {
    let mut rng = rng(seed);
    let (mut checked, mut attempts, mut sat) = (0, 0, 0);
    while checked < count {
        attempts += 1;
        if attempts > count * 400 {
            return Err(format!("only {checked} formulas fit the model-search cap"));
        }
        let f = gen_quantified_formula(&mut rng, 4);
        let cs = clause_list(&format!("fof(f, axiom, {f})."));
        let (ffuncs, fpreds) = formula_symbols(&f);
        let (cfuncs, mut cpreds) = clause_symbols(&cs);
        // Predicates that vanish in clausification still need a slot.
        for p in &fpreds {
            if !cpreds.iter().any(|q| q.0 == p.0) {
                cpreds.push(p.clone());
            }
        }
        let mut verdicts = Vec::new();
        for n in 1..=3 {
            let f_sat = find_model(n, &ffuncs, &fpreds, cap, |i| i.formula(&f, &mut HashMap::new()));
            let c_sat = find_model(n, &cfuncs, &cpreds, cap, |i| cs.iter().all(|c| i.clause(c)));
            match (f_sat, c_sat) {
                (Some(a), Some(b)) if a == b => verdicts.push(a),
                (Some(a), Some(b)) => {
                    let text: Vec<String> = cs.iter().map(ToString::to_string).collect();
                    return Err(format!("domain {n}: {f} sat {a}, clauses {text:?} sat {b}"));
                }
                _ => break,
            }
        }
        // Keep at least a third unsatisfiable so both directions are tested.
        let sat_quota = count - count / 3;
        if verdicts.len() == 3 && (!verdicts[2] || sat < sat_quota) {
            checked += 1;
            sat += usize::from(verdicts[2]);
        }
    }
    Ok(format!("{checked} quantified formulas ({sat} satisfiable at size 3) agree on domains 1..=3"))
}

/// Random definite Horn problem over p0(c)..p5(c): label, body atoms, head.
pub struct HornProblem {
    pub premises: Vec<(String, Vec<usize>, usize)>,
    pub goal: usize,
}

impl HornProblem {
    pub fn derives(&self, keep: &[&str]) -> bool {
        let mut known = BTreeSet::new();
        loop {
            let before = known.len();
            for (label, body, head) in &self.premises {
                if keep.contains(&label.as_str()) && body.iter().all(|b| known.contains(b)) {
                    known.insert(*head);
                }
            }
            if known.contains(&self.goal) {
                return true;
            }
            if known.len() == before {
                return false;
            }
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for (label, body, head) in &self.premises {
            let mut lits: Vec<String> = body.iter().map(|b| format!("~p{b}(c)")).collect();
            lits.push(format!("p{head}(c)"));
            out.push_str(&format!("cnf({label}, axiom, {}).\n", lits.join(" | ")));
        }
        out.push_str(&format!("cnf(goal, negated_conjecture, ~p{}(c)).\n", self.goal));
        out
    }
}

pub fn horn_problem(rng: &mut impl Rng) -> HornProblem {
    loop {
        let n = rng.random_range(3..=10);
        let premises = (0..n)
            .map(|i| {
                let body = if rng.random_bool(0.3) {
                    Vec::new()
                } else {
                    (0..rng.random_range(1..=2)).map(|_| rng.random_range(0..6)).collect()
                };
                (format!("h{:02}", i + 1), body, rng.random_range(0..6))
            })
            .collect();
        let mut p = HornProblem { premises, goal: rng.random_range(0..6) };
        let all: Vec<&str> = p.premises.iter().map(|x| x.0.as_str()).collect();
        // The goal must take at least one rule to reach.
        if !p.derives(&all) || p.premises.iter().any(|(_, body, head)| body.is_empty() && *head == p.goal) {
            continue;
        }
        // A direct fact for the goal under the last label is deleted first,
        // which leaves greedy deletion with a longer route than needed.
        if n < 10 && rng.random_bool(0.3) {
            p.premises.push((format!("h{:02}", n + 1), Vec::new(), p.goal));
        }
        return p;
    }
}

pub fn minimizer_correctness(seed: u64, count: usize) -> Check {
    let mut rng = rng(seed);
    let config = SearchConfig::default();
    let mut gaps = 0;
    for n in 0..count {
        let horn = horn_problem(&mut rng);
        let spec = parse_problem(&horn.text()).unwrap();
        let result = minimize_premises(&spec, &config).map_err(|e| format!("problem {n}: {e}"))?;
        let kept: Vec<&str> = result.kept.iter().map(String::as_str).collect();
        if !verify_minimality(&spec, &kept, &config) {
            return Err(format!("problem {n}: verify_minimality rejects {kept:?}"));
        }
        if !horn.derives(&kept) {
            return Err(format!("problem {n}: kept set {kept:?} does not derive the goal"));
        }
        if let Some(q) = kept.iter().find(|q| horn.derives(&kept.iter().copied().filter(|l| l != *q).collect::<Vec<_>>())) {
            return Err(format!("problem {n}: {q} can be dropped from {kept:?}"));
        }
        let labels: Vec<&str> = horn.premises.iter().map(|x| x.0.as_str()).collect();
        let minimum = (0u32..1 << labels.len())
            .filter(|bits| {
                let keep: Vec<&str> = (0..labels.len()).filter(|i| bits >> i & 1 == 1).map(|i| labels[i]).collect();
                horn.derives(&keep)
            })
            .map(u32::count_ones)
            .min()
            .unwrap() as usize;
        let flagged = result.exhaustive.as_ref().map(|e| e.cardinality_gap);
        if flagged != Some(minimum < kept.len()) {
            return Err(format!("problem {n}: minimum {minimum}, kept {}, flag {flagged:?}", kept.len()));
        }
        gaps += usize::from(minimum < kept.len());
    }
    Ok(format!("{count} problems 1-minimal and verified; {gaps} cardinality gaps all flagged"))
}

pub fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_proofscope")
}

pub fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(binary()).args(args).env_remove("PROOFSCOPE_INCLUDE_DIR").output().unwrap()
}

pub fn fixed_points() -> Check {
    let trivial = saturate(&axiom_set(&clauses(&["p", "-p"])), &SearchConfig::default()).unwrap();
    if trivial.refutations.len() != 1 || trivial.refutations[0].len() != 3 {
        return Err(format!("{{p, -p}}: {} proofs", trivial.refutations.len()));
    }
    let set = clauses(&["p | q", "-p", "-q"]);
    let found = run_all_input(&set).refutations;
    let oracle = enumerate_refutations_bounded(&set, EnumerationBound::new(12, 20, 6)).map_err(|e| e.to_string())?;
    if found.len() != oracle.len() || oracle.len() != 2 {
        return Err(format!("{{p|q, -p, -q}}: engine {}, oracle {}", found.len(), oracle.len()));
    }
    let limited = saturate(&axiom_set(&set), &SearchConfig { max_proofs: Some(1), ..SearchConfig::default() }).unwrap();
    if limited.refutations.len() != 1 || limited.status != Status::ProofsExhaustedByMax {
        return Err("max_proofs = 1 did not stop after the first proof".into());
    }
    let dir = tempfile::tempdir().unwrap();
    let file = problems_dir().join("disjunction.p");
    let out = run_cli(&["enumerate", file.to_str().unwrap(), "--max-proofs", "1", "--out", dir.path().to_str().unwrap()]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    if out.status.code() != Some(0) || !stdout.starts_with("proofs_exhausted_by_max, 1 proof\n") {
        return Err(format!("--max-proofs 1: exit {:?}, stdout {stdout:?}", out.status.code()));
    }
    Ok("{p, -p}: 1 proof of length 3; {p|q, -p, -q}: 2 proofs (oracle 2); --max-proofs 1 stops at 1".into())
}

fn enumerate_once(file: &Path, dir: &Path) -> Result<Vec<Vec<u8>>, String> {
    let log = dir.join("log.txt");
    let out = run_cli(&[
        "enumerate",
        file.to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
        "--log",
        log.to_str().unwrap(),
    ]);
    if !matches!(out.status.code(), Some(0..=2)) {
        return Err(format!("{}: exit {:?}: {}", file.display(), out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    let name = file.file_name().unwrap().to_str().unwrap();
    [log, dir.join(format!("{name}.report.json")), dir.join(format!("{name}.report.txt"))]
        .iter()
        .map(|p| std::fs::read(p).map_err(|e| format!("{}: {e}", p.display())))
        .chain(std::iter::once(Ok(out.stdout)))
        .collect()
}

pub fn determinism() -> Check {
    let files = suite_problems();
    for file in &files {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        let first = enumerate_once(file, a.path())?;
        let second = enumerate_once(file, b.path())?;
        // stdout names the report path, which differs between the two runs.
        let strip = |v: &[u8]| String::from_utf8_lossy(v).replace(a.path().to_str().unwrap(), "").replace(b.path().to_str().unwrap(), "");
        for (i, (x, y)) in first.iter().zip(&second).enumerate() {
            let same = if i == 3 { strip(x) == strip(y) } else { x == y };
            if !same {
                return Err(format!("{}: output {i} differs between runs", file.display()));
            }
        }
    }
    Ok(format!("{} problems: logs, reports and summaries byte-identical across runs", files.len()))
}

pub const SAMPLE_CLAUSES: [&str; 3] = ["c(f(A,B)) | -d(A) | c(B)", "c(f(a1,f(a1,A))) | c(A)", "-d(f(a1,a2))"];

pub fn parsing_fidelity() -> Check {
    for s in SAMPLE_CLAUSES {
        let c = parse_clause(s).map_err(|e| format!("{s}: {e}"))?;
        let printed = c.to_string();
        let back = parse_clause(&printed).map_err(|e| format!("{printed}: {e}"))?;
        if back != c {
            return Err(format!("{s} printed as {printed} reparses differently"));
        }
    }
    Ok("3 sample clauses round-trip to identical structures".into())
}
