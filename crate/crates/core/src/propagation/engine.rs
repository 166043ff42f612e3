//! Two-watched-literal unit propagation with an undoable trail.

use std::collections::HashSet;

use crate::cnf::{Cnf, Lit, Var};
use crate::error::LabError;

/// Result of propagating a set of assumptions to fixpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpResult {
    /// The closure, sorted by variable. Includes the assumptions themselves.
    Closure(Vec<Lit>),
    Conflict,
}

impl UpResult {
    pub fn is_conflict(&self) -> bool {
        matches!(self, UpResult::Conflict)
    }

    pub fn closure(&self) -> Option<&[Lit]> {
        match self {
            UpResult::Closure(c) => Some(c),
            UpResult::Conflict => None,
        }
    }
}

/// A point on the trail that [`Propagator::backtrack`] can return to.
#[derive(Clone, Copy, Debug)]
pub struct Mark {
    trail_len: usize,
    conflict: bool,
}

/// Incremental unit propagator.
///
/// Clauses are normalised on construction (duplicate literals merged,
/// tautologies dropped). Unit clauses and the empty clause are applied at
/// the base level, so a freshly built propagator already holds the closure
/// of the formula itself.
#[derive(Clone, Debug)]
pub struct Propagator {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    units: Vec<Lit>,
    has_empty: bool,
    watches: Vec<Vec<usize>>,
    value: Vec<i8>,
    trail: Vec<Lit>,
    qhead: usize,
    conflict: bool,
}

impl Propagator {
    pub fn new(cnf: &Cnf) -> Propagator {
        let num_vars = cnf.num_vars as usize;
        let mut clauses = Vec::new();
        let mut units = Vec::new();
        let mut has_empty = false;
        for clause in &cnf.clauses {
            let Some(c) = normalize(clause) else { continue };
            match c.len() {
                0 => has_empty = true,
                1 => units.push(c[0]),
                _ => clauses.push(c),
            }
        }
        let mut watches = vec![Vec::new(); 2 * num_vars];
        for (i, c) in clauses.iter().enumerate() {
            watches[c[0].code()].push(i);
            watches[c[1].code()].push(i);
        }
        let mut p = Propagator {
            num_vars,
            clauses,
            units,
            has_empty,
            watches,
            value: vec![0; num_vars],
            trail: Vec::new(),
            qhead: 0,
            conflict: false,
        };
        p.reset();
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Clears all assumptions and re-derives the base-level closure.
    pub fn reset(&mut self) {
        for lit in self.trail.drain(..) {
            self.value[lit.var().index()] = 0;
        }
        self.qhead = 0;
        self.conflict = self.has_empty;
        if self.conflict {
            return;
        }
        for i in 0..self.units.len() {
            let u = self.units[i];
            if !self.enqueue(u) {
                self.conflict = true;
                return;
            }
        }
        self.propagate();
    }

    pub fn is_conflict(&self) -> bool {
        self.conflict
    }

    /// Current value of a literal, `None` if its variable is unassigned.
    pub fn value(&self, lit: Lit) -> Option<bool> {
        match self.value[lit.var().index()] {
            0 => None,
            v => Some((v > 0) == lit.is_positive()),
        }
    }

    pub fn is_assigned(&self, var: Var) -> bool {
        self.value[var.index()] != 0
    }

    /// Assigned literals in the order they were derived.
    pub fn trail(&self) -> &[Lit] {
        &self.trail
    }

    pub fn mark(&self) -> Mark {
        Mark {
            trail_len: self.trail.len(),
            conflict: self.conflict,
        }
    }

    pub fn backtrack(&mut self, mark: Mark) {
        for lit in self.trail.drain(mark.trail_len..) {
            self.value[lit.var().index()] = 0;
        }
        self.qhead = mark.trail_len;
        self.conflict = mark.conflict;
    }

    /// Adds an assumption and propagates. Returns `false` on conflict
    /// (including an already-conflicting state).
    pub fn assume(&mut self, lit: Lit) -> bool {
        if self.conflict {
            return false;
        }
        if !self.enqueue(lit) {
            self.conflict = true;
            return false;
        }
        self.propagate()
    }

    fn enqueue(&mut self, lit: Lit) -> bool {
        match self.value(lit) {
            Some(v) => v,
            None => {
                self.value[lit.var().index()] = if lit.is_positive() { 1 } else { -1 };
                self.trail.push(lit);
                true
            }
        }
    }

    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let false_lit = !self.trail[self.qhead];
            self.qhead += 1;
            let mut ws = std::mem::take(&mut self.watches[false_lit.code()]);
            let mut keep = 0;
            let mut i = 0;
            while i < ws.len() {
                let ci = ws[i];
                i += 1;
                let clause = &mut self.clauses[ci];
                if clause[0] == false_lit {
                    clause.swap(0, 1);
                }
                let first = clause[0];
                if value_of(&self.value, first) == Some(true) {
                    ws[keep] = ci;
                    keep += 1;
                    continue;
                }
                if let Some(k) = (2..clause.len()).find(|&k| value_of(&self.value, clause[k]) != Some(false)) {
                    clause.swap(1, k);
                    let w = clause[1];
                    self.watches[w.code()].push(ci);
                    continue;
                }
                ws[keep] = ci;
                keep += 1;
                if value_of(&self.value, first) == Some(false) {
                    self.conflict = true;
                    while i < ws.len() {
                        ws[keep] = ws[i];
                        keep += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first);
                }
            }
            ws.truncate(keep);
            self.watches[false_lit.code()] = ws;
            if self.conflict {
                return false;
            }
        }
        true
    }
}

fn value_of(values: &[i8], lit: Lit) -> Option<bool> {
    match values[lit.var().index()] {
        0 => None,
        v => Some((v > 0) == lit.is_positive()),
    }
}

/// Sorted, deduplicated clause; `None` for a tautology.
pub(crate) fn normalize(lits: &[Lit]) -> Option<Vec<Lit>> {
    let mut c = lits.to_vec();
    c.sort_unstable();
    c.dedup();
    if c.windows(2).any(|w| w[0].var() == w[1].var()) {
        return None;
    }
    Some(c)
}

/// Checks that every assumption names a variable of the formula and that
/// no variable is assumed both ways.
pub(crate) fn check_assumptions(num_vars: u32, assumptions: &[Lit]) -> Result<(), LabError> {
    let mut seen: HashSet<Lit> = HashSet::new();
    for &lit in assumptions {
        if lit.var().0 > num_vars {
            return Err(LabError::UnknownVariable(lit.to_dimacs()));
        }
        if seen.contains(&!lit) {
            return Err(LabError::Complementary(lit.var().0));
        }
        seen.insert(lit);
    }
    Ok(())
}

/// Unit propagation of `cnf ∧ assumptions` to its least fixpoint.
pub fn unit_propagate(cnf: &Cnf, assumptions: &[Lit]) -> Result<UpResult, LabError> {
    check_assumptions(cnf.num_vars, assumptions)?;
    let mut p = Propagator::new(cnf);
    for &lit in assumptions {
        if !p.assume(lit) {
            return Ok(UpResult::Conflict);
        }
    }
    if p.is_conflict() {
        return Ok(UpResult::Conflict);
    }
    let mut closure = p.trail().to_vec();
    closure.sort_unstable();
    Ok(UpResult::Closure(closure))
}
