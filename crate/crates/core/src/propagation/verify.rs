//! Exhaustive and sampled checks of the four propagation-strength
//! properties.
//!
//! A partial assignment α over the scope is read as a ternary number with
//! digits unassigned < true < false, the first scope variable being the
//! least significant digit. The sweep visits α in increasing order and
//! reports the first one on which unit propagation falls short of
//! semantic entailment:
//!
//! * refutation properties (`consistency`, `urc`): `φ ∧ α ⊨ ⊥` but UP does
//!   not reach a conflict;
//! * propagation properties (`domain-consistency`, `pc`): additionally,
//!   some scope literal `l` with `φ ∧ α ⊨ l` is missing from the UP closure.
//!
//! Rather than materialising all `3^m` assignments, the sweep walks a tree
//! of *canonical* assignments: a child adds a literal on a variable of lower
//! position than every variable already in α and not already fixed by the
//! closure. A raw α that repeats a closure literal has the same closure as
//! its canonical reduct, one that contradicts the closure conflicts, and
//! everything below a conflict conflicts as well; so the reduct of the first
//! failing raw assignment is itself the first failing canonical node, and
//! the two sweeps report the same witness. [`raw_sweep`] is the literal
//! `3^m` loop and the tests hold the two against each other.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::engine::{check_assumptions, unit_propagate, Propagator, UpResult};
use super::oracle::{Model, Oracle, DEFAULT_ORACLE_CAP};
use crate::cnf::{Cnf, Lit, Var, VarMap};
use crate::error::LabError;

/// `3^14`: every partial assignment over fourteen variables.
pub const DEFAULT_BUDGET: u64 = 4_782_969;

/// Models kept per sweep node for cheap satisfiability / non-entailment
/// answers; beyond this the oracle is asked again.
const MODEL_POOL: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Consistency,
    DomainConsistency,
    Urc,
    Pc,
}

impl Property {
    pub const ALL: [Property; 4] = [
        Property::Consistency,
        Property::DomainConsistency,
        Property::Urc,
        Property::Pc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Consistency => "consistency",
            Property::DomainConsistency => "domain-consistency",
            Property::Urc => "urc",
            Property::Pc => "pc",
        }
    }

    /// Whether implied literals (not just ⊥) must be derived.
    pub fn is_propagation(self) -> bool {
        matches!(self, Property::DomainConsistency | Property::Pc)
    }

    /// The scope the property is stated over by default.
    pub fn natural_scope(self) -> Scope {
        match self {
            Property::Consistency | Property::DomainConsistency => Scope::Inputs,
            Property::Urc | Property::Pc => Scope::All,
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "consistency" => Ok(Property::Consistency),
            "domain-consistency" | "domain_consistency" => Ok(Property::DomainConsistency),
            "urc" => Ok(Property::Urc),
            "pc" => Ok(Property::Pc),
            _ => Err(format!(
                "unknown property `{s}` (expected consistency, domain-consistency, urc or pc)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scope {
    Inputs,
    All,
}

impl Scope {
    pub fn name(self) -> &'static str {
        match self {
            Scope::Inputs => "inputs",
            Scope::All => "all",
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scope {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "inputs" => Ok(Scope::Inputs),
            "all" => Ok(Scope::All),
            _ => Err(format!("unknown scope `{s}` (expected inputs or all)")),
        }
    }
}

/// The variables a scope ranges over. `inputs` needs a variable map that
/// labels the domain variables.
pub fn scope_vars(cnf: &Cnf, map: Option<&VarMap>, scope: Scope) -> Result<Vec<Var>, LabError> {
    match scope {
        Scope::All => Ok(cnf.vars().collect()),
        Scope::Inputs => {
            let inputs = map.map(VarMap::input_vars).unwrap_or_default();
            if inputs.is_empty() {
                return Err(LabError::NoInputs);
            }
            let mut inputs: Vec<Var> = inputs.into_iter().filter(|v| v.0 <= cnf.num_vars).collect();
            inputs.sort_unstable();
            Ok(inputs)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Counterexample,
    /// Sampled mode found nothing; this is not a proof.
    NoCounterexampleFound,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Counterexample => "counterexample",
            Verdict::NoCounterexampleFound => "no_counterexample_found",
        }
    }
}

/// What unit propagation failed to derive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Missed {
    Bottom,
    Lit(Lit),
}

impl fmt::Display for Missed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Missed::Bottom => f.write_str("⊥"),
            Missed::Lit(l) => write!(f, "{l}"),
        }
    }
}

/// A single failing partial assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub missed: Missed,
    /// UP closure of the assignment (which did not conflict).
    pub closure: Vec<Lit>,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Maximum number of sweep-tree nodes visited before giving up.
    pub budget: u64,
    /// Fall back to this many random assignments when the budget runs out.
    pub sample: Option<u64>,
    pub seed: u64,
    pub oracle_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: DEFAULT_BUDGET,
            sample: None,
            seed: 0,
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrengthReport {
    pub property: Property,
    pub scope: Scope,
    pub verdict: Verdict,
    /// The failing α, sorted by variable; empty unless a counterexample.
    pub witness: Vec<Lit>,
    pub missed: Option<Missed>,
    pub closure: Vec<Lit>,
    /// Sweep-tree nodes checked (exhaustive) or assignments drawn (sampled).
    pub explored: u64,
    pub exhaustive: bool,
    pub scope_size: usize,
}

impl StrengthReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn is_counterexample(&self) -> bool {
        self.verdict == Verdict::Counterexample
    }

    pub fn to_json(&self, map: Option<&VarMap>) -> Value {
        let ints = |v: &[Lit]| v.iter().map(|l| l.to_dimacs()).collect::<Vec<_>>();
        let missed = match self.missed {
            None => Value::Null,
            Some(Missed::Bottom) => json!("bot"),
            Some(Missed::Lit(l)) => json!(l.to_dimacs()),
        };
        let mut v = json!({
            "property": self.property.name(),
            "scope": self.scope.name(),
            "verdict": self.verdict.name(),
            "witness": ints(&self.witness),
            "missed": missed,
            "closure": ints(&self.closure),
            "explored": self.explored,
            "exhaustive": self.exhaustive,
            "scope_size": self.scope_size,
        });
        if let Some(map) = map {
            let names = |v: &[Lit]| v.iter().map(|&l| map.describe(l)).collect::<Vec<_>>();
            v["witness_names"] = json!(names(&self.witness));
            v["closure_names"] = json!(names(&self.closure));
            if let Some(Missed::Lit(l)) = self.missed {
                v["missed_name"] = json!(map.describe(l));
            }
        }
        v
    }

    /// Re-derives a reported counterexample from scratch: the oracle must
    /// confirm the implication and the engine its non-derivation. Reports
    /// without a counterexample recheck trivially.
    pub fn recheck(&self, cnf: &Cnf) -> Result<bool, LabError> {
        if self.verdict != Verdict::Counterexample {
            return Ok(true);
        }
        let Some(missed) = self.missed else { return Ok(false) };
        let oracle = Oracle::new(cnf)?;
        let closure = match unit_propagate(cnf, &self.witness)? {
            UpResult::Conflict => return Ok(false),
            UpResult::Closure(c) => c,
        };
        Ok(match missed {
            Missed::Bottom => !oracle.satisfiable(&self.witness)?,
            Missed::Lit(l) => !closure.contains(&l) && !closure.contains(&!l) && oracle.entailed(&self.witness, l)?,
        })
    }

    /// Whether this report's property, if it holds, implies `other`'s:
    /// propagation implies refutation, and a larger scope implies a
    /// smaller one.
    pub fn implies(&self, other: &StrengthReport) -> bool {
        let stronger = self.property.is_propagation() || !other.property.is_propagation();
        let wider = self.scope == Scope::All || other.scope == Scope::Inputs;
        stronger && wider
    }
}

impl fmt::Display for StrengthReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}: {}", self.property, self.scope, self.verdict.name())?;
        if let Some(m) = self.missed {
            let w: Vec<String> = self.witness.iter().map(|l| l.to_string()).collect();
            write!(f, " (α = {{{}}}, missed {m})", w.join(","))?;
        }
        write!(f, " after {} nodes", self.explored)
    }
}

/// Reports on the same formula that contradict the implications
/// PC(all) ⇒ URC(all) ⇒ consistency(inputs) and
/// PC(all) ⇒ domain-consistency(inputs).
pub fn implication_violations(reports: &[StrengthReport]) -> Vec<String> {
    let mut out = Vec::new();
    for a in reports.iter().filter(|r| r.holds()) {
        for b in reports.iter().filter(|r| r.is_counterexample()) {
            if a.implies(b) {
                out.push(format!(
                    "{} on {} holds but {} on {} has a counterexample",
                    a.property, a.scope, b.property, b.scope
                ));
            }
        }
    }
    out
}

/// Checks one partial assignment directly: fresh UP run plus one oracle
/// call per question. Returns the smallest scope variable whose implied
/// literal UP misses, or `⊥` if the refutation itself is missed.
pub fn check_assignment(
    cnf: &Cnf,
    scope: &[Var],
    alpha: &[Lit],
    property: Property,
) -> Result<Option<Failure>, LabError> {
    check_assumptions(cnf.num_vars, alpha)?;
    let oracle = Oracle::new(cnf)?;
    check_with(&oracle, cnf, scope, alpha, property)
}

fn check_with(
    oracle: &Oracle,
    cnf: &Cnf,
    scope: &[Var],
    alpha: &[Lit],
    property: Property,
) -> Result<Option<Failure>, LabError> {
    let closure = match unit_propagate(cnf, alpha)? {
        UpResult::Conflict => return Ok(None),
        UpResult::Closure(c) => c,
    };
    if !oracle.satisfiable(alpha)? {
        return Ok(Some(Failure {
            missed: Missed::Bottom,
            closure,
        }));
    }
    if property.is_propagation() {
        let mut vars = scope.to_vec();
        vars.sort_unstable();
        for v in vars {
            if closure.iter().any(|l| l.var() == v) {
                continue;
            }
            for lit in [v.pos(), v.neg()] {
                if oracle.entailed(alpha, lit)? {
                    return Ok(Some(Failure {
                        missed: Missed::Lit(lit),
                        closure,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// The unoptimised sweep: every one of the `3^m` assignments in counter
/// order, each checked with [`check_assignment`]. Meant for cross-checking
/// the tree sweep on small scopes.
pub fn raw_sweep(cnf: &Cnf, scope: &[Var], property: Property) -> Result<Option<(Vec<Lit>, Failure)>, LabError> {
    let oracle = Oracle::new(cnf)?;
    let m = scope.len();
    let mut digits = vec![0u8; m];
    loop {
        let mut alpha: Vec<Lit> = scope
            .iter()
            .zip(&digits)
            .filter_map(|(&v, &d)| match d {
                1 => Some(v.pos()),
                2 => Some(v.neg()),
                _ => None,
            })
            .collect();
        alpha.sort_unstable();
        if let Some(f) = check_with(&oracle, cnf, scope, &alpha, property)? {
            return Ok(Some((alpha, f)));
        }
        // Increment the counter, least significant digit first.
        let mut i = 0;
        loop {
            if i == m {
                return Ok(None);
            }
            digits[i] += 1;
            if digits[i] < 3 {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

enum Stop {
    Found(Vec<Lit>, Failure),
    Budget,
    Cancelled,
}

struct Sweep<'a> {
    oracle: &'a Oracle,
    scope: &'a [Var],
    propagation: bool,
    budget: u64,
    visited: &'a AtomicU64,
    /// Smallest task index that has found a counterexample.
    found_at: &'a AtomicUsize,
}

fn masks(trail: &[Lit]) -> (u64, u64) {
    let (mut t, mut f) = (0u64, 0u64);
    for &l in trail {
        let b = 1u64 << l.var().index();
        if l.is_positive() {
            t |= b;
        } else {
            f |= b;
        }
    }
    (t, f)
}

fn push_model(models: &mut Vec<Model>, m: Model) {
    if models.len() < MODEL_POOL {
        models.push(m);
    }
}

impl Sweep<'_> {
    fn tick(&self, task: usize) -> Result<(), Stop> {
        if self.found_at.load(Ordering::Relaxed) < task {
            return Err(Stop::Cancelled);
        }
        if self.visited.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(Stop::Budget);
        }
        Ok(())
    }

    /// Checks the current (non-conflicting) state. `models` holds models of
    /// the formula under the current assumptions and is extended in place.
    fn check_node(&self, prop: &Propagator, models: &mut Vec<Model>) -> Option<Missed> {
        let (t, f) = masks(prop.trail());
        if models.is_empty() {
            match self.oracle.solve_masks(t, f) {
                None => return Some(Missed::Bottom),
                Some(m) => models.push(m),
            }
        }
        if !self.propagation {
            return None;
        }
        for &v in self.scope {
            if prop.is_assigned(v) {
                continue;
            }
            let b = 1u64 << v.index();
            let seen_true = models.iter().any(|m| m & b != 0);
            let seen_false = models.iter().any(|m| m & b == 0);
            if seen_true && seen_false {
                continue;
            }
            // Every known model agrees on v; look for one that does not.
            let query = if seen_true { (t, f | b) } else { (t | b, f) };
            match self.oracle.solve_masks(query.0, query.1) {
                Some(m) => push_model(models, m),
                None => return Some(Missed::Lit(Lit::new(v, seen_true))),
            }
        }
        None
    }

    fn failure(&self, prop: &Propagator, alpha: &[Lit], missed: Missed) -> Stop {
        let mut witness = alpha.to_vec();
        witness.sort_unstable();
        let mut closure = prop.trail().to_vec();
        closure.sort_unstable();
        Stop::Found(witness, Failure { missed, closure })
    }

    /// Visits the subtree rooted at the current state; children may only
    /// use scope positions below `limit`.
    fn dfs(
        &self,
        task: usize,
        prop: &mut Propagator,
        alpha: &mut Vec<Lit>,
        limit: usize,
        mut models: Vec<Model>,
    ) -> Result<(), Stop> {
        self.tick(task)?;
        if let Some(missed) = self.check_node(prop, &mut models) {
            return Err(self.failure(prop, alpha, missed));
        }
        for j in 0..limit {
            let v = self.scope[j];
            if prop.is_assigned(v) {
                continue;
            }
            for positive in [true, false] {
                let lit = Lit::new(v, positive);
                let mark = prop.mark();
                if prop.assume(lit) {
                    let b = 1u64 << v.index();
                    let inherited: Vec<Model> = models.iter().copied().filter(|m| (m & b != 0) == positive).collect();
                    alpha.push(lit);
                    self.dfs(task, prop, alpha, j, inherited)?;
                    alpha.pop();
                } else {
                    // A conflicting node passes, and so does its subtree.
                    self.tick(task)?;
                }
                prop.backtrack(mark);
            }
        }
        Ok(())
    }
}

/// Sweeps every partial assignment over `scope` and returns the first
/// counterexample to `property`, or `holds`.
///
/// `scope_kind` only labels the report; the variables come from `scope`.
/// When the budget is exhausted the sweep falls back to sampling if
/// `options.sample` is set, and fails with
/// [`LabError::BudgetExceeded`] otherwise.
pub fn verify_strength(
    cnf: &Cnf,
    scope: &[Var],
    scope_kind: Scope,
    property: Property,
    options: &VerifyOptions,
) -> Result<StrengthReport, LabError> {
    let oracle = Oracle::with_cap(cnf, options.oracle_cap)?;
    let mut scope = scope.to_vec();
    scope.sort_unstable();
    scope.dedup();
    if let Some(v) = scope.iter().find(|v| v.0 == 0 || v.0 > cnf.num_vars) {
        return Err(LabError::UnknownVariable(v.0 as i32));
    }

    let base = Propagator::new(cnf);
    let mut report = StrengthReport {
        property,
        scope: scope_kind,
        verdict: Verdict::Holds,
        witness: Vec::new(),
        missed: None,
        closure: Vec::new(),
        explored: 0,
        exhaustive: true,
        scope_size: scope.len(),
    };
    if base.is_conflict() {
        // UP refutes the empty assignment, hence every assignment.
        report.explored = 1;
        return Ok(report);
    }

    let visited = AtomicU64::new(0);
    let found_at = AtomicUsize::new(usize::MAX);
    let sweep = Sweep {
        oracle: &oracle,
        scope: &scope,
        propagation: property.is_propagation(),
        budget: options.budget,
        visited: &visited,
        found_at: &found_at,
    };

    // Task 0 is the root itself; task 1 + 2j + (0|1) is the subtree below
    // the root's child on scope position j, true then false.
    let root = {
        let mut models = Vec::new();
        match sweep.tick(0) {
            Err(stop) => Err(stop),
            Ok(()) => match sweep.check_node(&base, &mut models) {
                Some(missed) => Err(sweep.failure(&base, &[], missed)),
                None => Ok(()),
            },
        }
    };
    let results: Vec<Result<(), Stop>> = if root.is_err() {
        vec![root]
    } else {
        let tasks: Vec<(usize, Lit)> = scope
            .iter()
            .enumerate()
            .filter(|(_, v)| !base.is_assigned(**v))
            .flat_map(|(j, &v)| [(j, v.pos()), (j, v.neg())])
            .collect();
        let mut results = vec![root];
        let sub: Vec<Result<(), Stop>> = tasks
            .par_iter()
            .enumerate()
            .map(|(i, &(j, lit))| {
                let task = i + 1;
                let mut prop = base.clone();
                let outcome = if prop.assume(lit) {
                    sweep.dfs(task, &mut prop, &mut vec![lit], j, Vec::new())
                } else {
                    sweep.tick(task)
                };
                if let Err(Stop::Found(..)) = outcome {
                    found_at.fetch_min(task, Ordering::Relaxed);
                }
                outcome
            })
            .collect();
        results.extend(sub);
        results
    };

    report.explored = visited.load(Ordering::Relaxed).min(options.budget);
    let mut exceeded = false;
    for outcome in results {
        match outcome {
            Ok(()) => continue,
            Err(Stop::Found(witness, failure)) => {
                report.verdict = Verdict::Counterexample;
                report.witness = witness;
                report.missed = Some(failure.missed);
                report.closure = failure.closure;
                return Ok(report);
            }
            // A cancelled task always follows the task that found the
            // counterexample, so only the budget can end the loop here.
            Err(Stop::Budget) | Err(Stop::Cancelled) => {
                exceeded = true;
                break;
            }
        }
    }
    match options.sample {
        _ if !exceeded => Ok(report),
        Some(n) => sample(cnf, &oracle, &scope, scope_kind, property, n, options.seed),
        None => Err(LabError::BudgetExceeded { budget: options.budget }),
    }
}

/// Checks `n` random partial assignments (each scope variable unassigned,
/// true or false with equal probability).
fn sample(
    cnf: &Cnf,
    oracle: &Oracle,
    scope: &[Var],
    scope_kind: Scope,
    property: Property,
    n: u64,
    seed: u64,
) -> Result<StrengthReport, LabError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let visited = AtomicU64::new(0);
    let found_at = AtomicUsize::new(usize::MAX);
    let sweep = Sweep {
        oracle,
        scope,
        propagation: property.is_propagation(),
        budget: u64::MAX,
        visited: &visited,
        found_at: &found_at,
    };
    let mut prop = Propagator::new(cnf);
    let base = prop.mark();
    let mut report = StrengthReport {
        property,
        scope: scope_kind,
        verdict: Verdict::NoCounterexampleFound,
        witness: Vec::new(),
        missed: None,
        closure: Vec::new(),
        explored: 0,
        exhaustive: false,
        scope_size: scope.len(),
    };
    for k in 0..n {
        report.explored = k + 1;
        prop.backtrack(base);
        let mut alpha = Vec::new();
        let mut conflict = false;
        for &v in scope {
            let lit = match rng.gen_range(0..3) {
                1 => v.pos(),
                2 => v.neg(),
                _ => continue,
            };
            alpha.push(lit);
            conflict = conflict || !prop.assume(lit);
        }
        if conflict {
            continue;
        }
        let mut models = Vec::new();
        if let Some(missed) = sweep.check_node(&prop, &mut models) {
            if let Stop::Found(witness, failure) = sweep.failure(&prop, &alpha, missed) {
                report.verdict = Verdict::Counterexample;
                report.witness = witness;
                report.missed = Some(failure.missed);
                report.closure = failure.closure;
            }
            return Ok(report);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cnf(n: u32, clauses: &[&[i32]]) -> Cnf {
        let mut c = Cnf::new(n);
        for cl in clauses {
            c.add(cl.iter().map(|&v| Lit::from_dimacs(v).unwrap()).collect());
        }
        c
    }

    fn lits(v: &[i32]) -> Vec<Lit> {
        v.iter().map(|&x| Lit::from_dimacs(x).unwrap()).collect()
    }

    fn all(c: &Cnf) -> Vec<Var> {
        c.vars().collect()
    }

    #[test]
    fn pairwise_amo_is_pc() {
        let c = cnf(3, &[&[-1, -2], &[-1, -3], &[-2, -3]]);
        let r = verify_strength(&c, &all(&c), Scope::All, Property::Pc, &VerifyOptions::default()).unwrap();
        assert!(r.holds(), "{r}");
        assert!(r.exhaustive);
    }

    #[test]
    fn urc_but_not_pc() {
        // (¬x1 ∨ x2 ∨ x3) ∧ (¬x1 ∨ x2 ∨ ¬x3) ≡ x1 → x2, but UP needs x3 fixed.
        let c = cnf(3, &[&[-1, 2, 3], &[-1, 2, -3]]);
        let opts = VerifyOptions::default();
        let urc = verify_strength(&c, &all(&c), Scope::All, Property::Urc, &opts).unwrap();
        assert!(urc.holds(), "{urc}");
        let pc = verify_strength(&c, &all(&c), Scope::All, Property::Pc, &opts).unwrap();
        assert!(pc.is_counterexample());
        assert_eq!(pc.witness, lits(&[1]));
        assert_eq!(pc.missed, Some(Missed::Lit(Lit::from_dimacs(2).unwrap())));
        assert!(pc.recheck(&c).unwrap());
        assert_eq!(raw_sweep(&c, &all(&c), Property::Pc).unwrap().unwrap().0, pc.witness);
    }

    #[test]
    fn full_parity_is_pc() {
        let c = cnf(3, &[&[1, 2, 3], &[1, -2, -3], &[-1, 2, -3], &[-1, -2, 3]]);
        let r = verify_strength(&c, &all(&c), Scope::All, Property::Pc, &VerifyOptions::default()).unwrap();
        assert!(r.holds(), "{r}");
    }

    #[test]
    fn missed_refutation() {
        // (x1 ∨ x2) ∧ (x1 ∨ ¬x2) ∧ (¬x1 ∨ x3) ∧ (¬x1 ∨ ¬x3): UP alone cannot
        // refute the empty assignment.
        let c = cnf(3, &[&[1, 2], &[1, -2], &[-1, 3], &[-1, -3]]);
        let r = verify_strength(&c, &all(&c), Scope::All, Property::Urc, &VerifyOptions::default()).unwrap();
        assert!(r.is_counterexample());
        assert!(r.witness.is_empty());
        assert_eq!(r.missed, Some(Missed::Bottom));
        assert!(r.recheck(&c).unwrap());
    }

    #[test]
    fn budget_and_sampling() {
        let c = cnf(6, &[&[1, 2, 3, 4, 5, 6]]);
        let tight = VerifyOptions {
            budget: 5,
            ..VerifyOptions::default()
        };
        assert_eq!(
            verify_strength(&c, &all(&c), Scope::All, Property::Pc, &tight),
            Err(LabError::BudgetExceeded { budget: 5 })
        );
        let sampled = VerifyOptions {
            sample: Some(50),
            ..tight
        };
        let r = verify_strength(&c, &all(&c), Scope::All, Property::Pc, &sampled).unwrap();
        assert_eq!(r.verdict, Verdict::NoCounterexampleFound);
        assert!(!r.exhaustive);
        assert_eq!(r.explored, 50);
        assert_eq!(r.to_json(None)["verdict"], "no_counterexample_found");
    }

    #[test]
    fn inputs_scope_needs_a_map() {
        let c = cnf(2, &[]);
        assert_eq!(scope_vars(&c, None, Scope::Inputs), Err(LabError::NoInputs));
        assert_eq!(scope_vars(&c, None, Scope::All).unwrap(), vec![Var(1), Var(2)]);
    }

    #[test]
    fn json_shape() {
        let c = cnf(3, &[&[1, 2], &[1, -2], &[-1, 3], &[-1, -3]]);
        let r = verify_strength(&c, &all(&c), Scope::All, Property::Urc, &VerifyOptions::default()).unwrap();
        let j = r.to_json(None);
        assert_eq!(j["property"], "urc");
        assert_eq!(j["scope"], "all");
        assert_eq!(j["verdict"], "counterexample");
        assert_eq!(j["missed"], "bot");
        assert_eq!(j["witness"], json!([]));
    }

    #[test]
    fn implication_meta_check() {
        let c = cnf(3, &[&[1, 2, 3], &[1, -2, -3], &[-1, 2, -3], &[-1, -2, 3]]);
        let opts = VerifyOptions::default();
        let reports: Vec<StrengthReport> = [Property::Urc, Property::Pc]
            .into_iter()
            .map(|p| verify_strength(&c, &all(&c), Scope::All, p, &opts).unwrap())
            .collect();
        assert!(implication_violations(&reports).is_empty());
        let mut forged = reports.clone();
        forged[1].verdict = Verdict::Holds;
        forged[0].verdict = Verdict::Counterexample;
        assert_eq!(implication_violations(&forged).len(), 1);
    }
}
