//! Complete semantic oracle: a small DPLL search over bitmask clauses.
//!
//! Deliberately shares no code with [`super::engine`]: clauses are stored as
//! pairs of bitmasks and unit propagation is a plain fixpoint loop, so a bug
//! in the watched-literal engine cannot hide itself behind the oracle.

use crate::cnf::{Cnf, Lit};
use crate::error::LabError;

/// Default upper bound on the number of variables the oracle accepts.
pub const DEFAULT_ORACLE_CAP: usize = 64;

/// A total assignment over at most 64 variables; bit `i` is variable `i+1`.
pub type Model = u64;

#[derive(Clone, Debug)]
pub struct Oracle {
    num_vars: usize,
    /// (positive-literal mask, negative-literal mask) per clause.
    clauses: Vec<(u64, u64)>,
    unsat: bool,
}

fn bit(lit: Lit) -> u64 {
    1u64 << lit.var().index()
}

impl Oracle {
    pub fn new(cnf: &Cnf) -> Result<Oracle, LabError> {
        Oracle::with_cap(cnf, DEFAULT_ORACLE_CAP)
    }

    pub fn with_cap(cnf: &Cnf, cap: usize) -> Result<Oracle, LabError> {
        let num_vars = cnf.num_vars as usize;
        let cap = cap.min(64);
        if num_vars > cap {
            return Err(LabError::OracleCap { vars: num_vars, cap });
        }
        let mut clauses = Vec::with_capacity(cnf.clauses.len());
        let mut unsat = false;
        for c in &cnf.clauses {
            let (mut p, mut n) = (0u64, 0u64);
            for &lit in c {
                if lit.is_positive() {
                    p |= bit(lit);
                } else {
                    n |= bit(lit);
                }
            }
            if p & n != 0 {
                continue;
            }
            if p | n == 0 {
                unsat = true;
            }
            clauses.push((p, n));
        }
        Ok(Oracle {
            num_vars,
            clauses,
            unsat,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    fn all_mask(&self) -> u64 {
        if self.num_vars == 64 {
            u64::MAX
        } else {
            (1u64 << self.num_vars) - 1
        }
    }

    fn masks(&self, assumptions: &[Lit]) -> Result<(u64, u64), LabError> {
        let (mut t, mut f) = (0u64, 0u64);
        for &lit in assumptions {
            if lit.var().index() >= self.num_vars {
                return Err(LabError::UnknownVariable(lit.to_dimacs()));
            }
            if lit.is_positive() {
                t |= bit(lit);
            } else {
                f |= bit(lit);
            }
        }
        if t & f != 0 {
            return Err(LabError::Complementary((t & f).trailing_zeros() + 1));
        }
        Ok((t, f))
    }

    /// Some model of the formula extending the assumptions.
    pub fn find_model(&self, assumptions: &[Lit]) -> Result<Option<Model>, LabError> {
        let (t, f) = self.masks(assumptions)?;
        Ok(self.solve_masks(t, f))
    }

    pub fn satisfiable(&self, assumptions: &[Lit]) -> Result<bool, LabError> {
        Ok(self.find_model(assumptions)?.is_some())
    }

    /// Whether `formula ∧ assumptions ⊨ lit` (vacuously true when the
    /// assumptions are inconsistent with the formula).
    pub fn entailed(&self, assumptions: &[Lit], lit: Lit) -> Result<bool, LabError> {
        let (t, f) = self.masks(assumptions)?;
        if lit.var().index() >= self.num_vars {
            return Err(LabError::UnknownVariable(lit.to_dimacs()));
        }
        let b = bit(lit);
        // Add the complement of `lit` and look for a model.
        let (t2, f2) = if lit.is_positive() { (t, f | b) } else { (t | b, f) };
        if t2 & f2 != 0 {
            return Ok(true);
        }
        Ok(self.solve_masks(t2, f2).is_none())
    }

    /// Model search over assumption masks (true-set, false-set). Unassigned
    /// variables left over at a satisfying leaf are set to false.
    pub(crate) fn solve_masks(&self, t: u64, f: u64) -> Option<Model> {
        if self.unsat {
            return None;
        }
        let (t, f) = self.unit_fixpoint(t, f)?;
        match self.branch_var(t, f) {
            None => Some(t),
            Some(b) => self.solve_masks(t | b, f).or_else(|| self.solve_masks(t, f | b)),
        }
    }

    fn unit_fixpoint(&self, mut t: u64, mut f: u64) -> Option<(u64, u64)> {
        loop {
            let mut changed = false;
            for &(p, n) in &self.clauses {
                if p & t != 0 || n & f != 0 {
                    continue;
                }
                let free = (p | n) & !(t | f);
                match free.count_ones() {
                    0 => return None,
                    1 => {
                        if p & free != 0 {
                            t |= free;
                        } else {
                            f |= free;
                        }
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return Some((t, f));
            }
        }
    }

    /// Lowest free variable of the first clause not yet satisfied.
    fn branch_var(&self, t: u64, f: u64) -> Option<u64> {
        self.clauses.iter().find_map(|&(p, n)| {
            if p & t != 0 || n & f != 0 {
                None
            } else {
                let free = (p | n) & !(t | f);
                Some(free & free.wrapping_neg())
            }
        })
    }

    /// Every model of the formula, as sorted bitmasks. `cap` bounds the
    /// number of models returned; `None` signals that it was exceeded.
    pub fn models(&self, cap: usize) -> Option<Vec<Model>> {
        let mut out = Vec::new();
        if !self.unsat && !self.collect(0, 0, cap, &mut out) {
            return None;
        }
        out.sort_unstable();
        Some(out)
    }

    fn collect(&self, t: u64, f: u64, cap: usize, out: &mut Vec<Model>) -> bool {
        let Some((t, f)) = self.unit_fixpoint(t, f) else {
            return true;
        };
        match self.branch_var(t, f) {
            Some(b) => self.collect(t | b, f, cap, out) && self.collect(t, f | b, cap, out),
            None => {
                // All clauses satisfied: every completion of the free
                // variables is a model.
                let free = self.all_mask() & !(t | f);
                let k = free.count_ones();
                if k >= 32 || out.len() + (1usize << k) > cap {
                    return false;
                }
                let free_bits: Vec<u64> = (0..64).map(|i| 1u64 << i).filter(|b| free & b != 0).collect();
                for combo in 0..(1u64 << k) {
                    let mut m = t;
                    for (j, b) in free_bits.iter().enumerate() {
                        if combo >> j & 1 == 1 {
                            m |= b;
                        }
                    }
                    out.push(m);
                }
                true
            }
        }
    }
}

/// Value of `lit` in a model.
pub fn model_value(model: Model, lit: Lit) -> bool {
    (model & bit(lit) != 0) == lit.is_positive()
}

/// The literals of a model over `num_vars` variables, as DIMACS integers.
pub fn model_to_dimacs(model: Model, num_vars: usize) -> Vec<i32> {
    (0..num_vars)
        .map(|i| {
            let v = i as i32 + 1;
            if model >> i & 1 == 1 {
                v
            } else {
                -v
            }
        })
        .collect()
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

    fn l(v: i32) -> Lit {
        Lit::from_dimacs(v).unwrap()
    }

    /// Brute force over all 2^n assignments.
    fn brute(c: &Cnf) -> Vec<Model> {
        (0..1u64 << c.num_vars)
            .filter(|&m| {
                let bools: Vec<bool> = (0..c.num_vars).map(|i| m >> i & 1 == 1).collect();
                c.satisfied_by(&bools)
            })
            .collect()
    }

    #[test]
    fn contradiction() {
        let o = Oracle::new(&cnf(1, &[&[1], &[-1]])).unwrap();
        assert!(!o.satisfiable(&[]).unwrap());
        assert!(o.entailed(&[], l(1)).unwrap());
    }

    #[test]
    fn models_match_brute_force() {
        let cases: Vec<Cnf> = vec![
            cnf(3, &[&[1, 2], &[-1, 3]]),
            cnf(4, &[&[1, 2, 3, 4], &[-1, -2], &[-3, -4], &[-1, -3]]),
            cnf(3, &[]),
            cnf(2, &[&[1, -1]]),
        ];
        for c in cases {
            let o = Oracle::new(&c).unwrap();
            assert_eq!(o.models(1 << 20).unwrap(), brute(&c));
        }
    }

    #[test]
    fn entailment_and_errors() {
        let o = Oracle::new(&cnf(3, &[&[-1, 2], &[-2, 3]])).unwrap();
        assert!(o.entailed(&[l(1)], l(3)).unwrap());
        assert!(!o.entailed(&[l(2)], l(1)).unwrap());
        assert!(o.entailed(&[l(1)], l(1)).unwrap());
        assert_eq!(o.satisfiable(&[l(4)]), Err(LabError::UnknownVariable(4)));
        assert_eq!(o.satisfiable(&[l(1), l(-1)]), Err(LabError::Complementary(1)));
        assert!(matches!(
            Oracle::with_cap(&cnf(30, &[]), 24),
            Err(LabError::OracleCap { vars: 30, cap: 24 })
        ));
    }

    #[test]
    fn model_cap() {
        let o = Oracle::new(&cnf(10, &[])).unwrap();
        assert!(o.models(100).is_none());
        assert_eq!(o.models(1024).unwrap().len(), 1024);
    }
}
