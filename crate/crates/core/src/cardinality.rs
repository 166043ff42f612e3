//! At-most-one, exactly-one and at-most-k constraints as CNF fragments.
//!
//! Generators take input *literals*, so a constraint can be stated over
//! negated inputs, and draw auxiliary variables from a caller-supplied
//! [`AuxAllocator`] so that fragments embed into larger formulas.

use crate::cnf::{Clause, Lit, Var};
use crate::error::CardinalityError;

pub trait AuxAllocator {
    fn fresh(&mut self) -> Var;
}

/// Hands out consecutive variables starting at `next`.
#[derive(Clone, Debug)]
pub struct VarCounter {
    next: u32,
}

impl VarCounter {
    pub fn starting_at(first: u32) -> VarCounter {
        VarCounter { next: first.max(1) }
    }

    /// The last variable handed out so far (0 if none).
    pub fn last(&self) -> u32 {
        self.next - 1
    }
}

impl AuxAllocator for VarCounter {
    fn fresh(&mut self) -> Var {
        let v = Var(self.next);
        self.next += 1;
        v
    }
}

/// For an auxiliary literal `lit`, the input assignment it is equivalent to
/// in every model of the fragment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HEntry {
    pub lit: Lit,
    pub implies: Vec<Lit>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CnfFragment {
    pub clauses: Vec<Clause>,
    pub inputs: Vec<Lit>,
    pub aux: Vec<Var>,
    pub h_map: Vec<HEntry>,
}

impl CnfFragment {
    fn over(inputs: &[Lit]) -> CnfFragment {
        CnfFragment {
            inputs: inputs.to_vec(),
            ..CnfFragment::default()
        }
    }

    /// Largest variable index mentioned by inputs, auxiliaries or clauses.
    pub fn max_var(&self) -> u32 {
        let from_clauses = self.clauses.iter().flatten().map(|l| l.var().0);
        let from_inputs = self.inputs.iter().map(|l| l.var().0);
        let from_aux = self.aux.iter().map(|v| v.0);
        from_clauses.chain(from_inputs).chain(from_aux).max().unwrap_or(0)
    }
}

fn pairwise(lits: &[Lit], out: &mut Vec<Clause>) {
    for (i, &a) in lits.iter().enumerate() {
        for &b in &lits[i + 1..] {
            out.push(vec![!a, !b]);
        }
    }
}

/// All `C(n, 2)` binary clauses `¬l_i ∨ ¬l_j`.
pub fn amo_pairwise(inputs: &[Lit]) -> CnfFragment {
    let mut f = CnfFragment::over(inputs);
    pairwise(inputs, &mut f.clauses);
    f
}

/// Pairwise at-most-one plus the clause `l_1 ∨ … ∨ l_n`.
pub fn eo_pairwise(inputs: &[Lit]) -> CnfFragment {
    let mut f = amo_pairwise(inputs);
    f.clauses.push(inputs.to_vec());
    f
}

/// The ladder `μ_n`: `μ_2`, `μ_3` pairwise, and for `n ≥ 4`
/// `(¬x1 ∨ ¬x2)(¬x1 ∨ y)(¬x2 ∨ y) ∧ μ_{n-1}(y, x3, …, xn)`.
/// For `n ≥ 3` this is `3n − 6` clauses over `n − 3` auxiliaries.
pub fn amo_ladder(inputs: &[Lit], alloc: &mut dyn AuxAllocator) -> Result<CnfFragment, CardinalityError> {
    if inputs.len() < 2 {
        return Err(CardinalityError::TooFewInputs(inputs.len()));
    }
    let mut f = CnfFragment::over(inputs);
    let mut head = inputs[0];
    let mut rest = &inputs[1..];
    while rest.len() >= 3 {
        let x2 = rest[0];
        let y = alloc.fresh();
        f.aux.push(y);
        f.clauses.push(vec![!head, !x2]);
        f.clauses.push(vec![!head, y.pos()]);
        f.clauses.push(vec![!x2, y.pos()]);
        head = y.pos();
        rest = &rest[1..];
    }
    let mut tail = vec![head];
    tail.extend_from_slice(rest);
    pairwise(&tail, &mut f.clauses);
    Ok(f)
}

/// The chain `ε_n`: `ε_1 = x1`, `ε_2`, `ε_3` prime, and for `n ≥ 4`
/// `ε_3(x1, x2, ¬y1) ∧ ε_3(y1, x3, ¬y2) ∧ … ∧ ε_3(y_{n−3}, x_{n−1}, x_n)`,
/// which is `4n − 8` clauses over `n − 3` auxiliaries.
///
/// The h-map records `¬y_i ⇔ ¬x_1 ∧ … ∧ ¬x_{i+1}` and
/// `y_i ⇔ ¬x_{i+2} ∧ … ∧ ¬x_n`.
pub fn eo_chain(inputs: &[Lit], alloc: &mut dyn AuxAllocator) -> CnfFragment {
    let n = inputs.len();
    if n <= 3 {
        return match n {
            1 => CnfFragment {
                clauses: vec![vec![inputs[0]]],
                ..CnfFragment::over(inputs)
            },
            _ => eo_pairwise(inputs),
        };
    }
    let mut f = CnfFragment::over(inputs);
    let ys: Vec<Var> = (0..n - 3).map(|_| alloc.fresh()).collect();
    for k in 0..n - 2 {
        let first = if k == 0 { inputs[0] } else { ys[k - 1].pos() };
        let second = inputs[k + 1];
        let third = if k == n - 3 { inputs[n - 1] } else { ys[k].neg() };
        let block = [first, second, third];
        pairwise(&block, &mut f.clauses);
        f.clauses.push(block.to_vec());
    }
    for (i, &y) in ys.iter().enumerate() {
        // y is y_{i+1} in 1-based terms.
        f.h_map.push(HEntry {
            lit: y.neg(),
            implies: inputs[..i + 2].iter().map(|&x| !x).collect(),
        });
        f.h_map.push(HEntry {
            lit: y.pos(),
            implies: inputs[i + 2..].iter().map(|&x| !x).collect(),
        });
    }
    f.aux = ys;
    f
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Atom {
    Input(usize),
    /// `s_{i,j}`, 1-based.
    Reg(usize, usize),
}

/// Sequential counter for `Σ l_i ≤ k`: register `s_{i,j}` reads "at least
/// `j` of `l_1..l_i` are true".
///
/// With `simplified`, unit propagation on the register units and removal of
/// clauses containing a pure register literal are applied first; for
/// `(n, k) = (4, 2)` this leaves the eight clauses over
/// `s_{1,1}, s_{2,1}, s_{2,2}, s_{3,2}`. Auxiliaries are allocated only for
/// surviving registers, in `(i, j)` order. For `k = n` the constraint is
/// vacuous and the fragment empty.
pub fn lt_seq_amk(
    inputs: &[Lit],
    k: usize,
    alloc: &mut dyn AuxAllocator,
    simplified: bool,
) -> Result<CnfFragment, CardinalityError> {
    lt_seq_impl(inputs, k, alloc, simplified).map(|(f, _)| f)
}

type Registers = Vec<(usize, usize)>;

fn lt_seq_impl(
    inputs: &[Lit],
    k: usize,
    alloc: &mut dyn AuxAllocator,
    simplified: bool,
) -> Result<(CnfFragment, Registers), CardinalityError> {
    let n = inputs.len();
    if k == 0 || k > n {
        return Err(CardinalityError::BoundOutOfRange { n, k });
    }
    let mut f = CnfFragment::over(inputs);
    if k == n {
        return Ok((f, Vec::new()));
    }
    type Sym = (Atom, bool);
    let x = |i: usize, pos: bool| -> Sym { (Atom::Input(i - 1), pos) };
    let s = |i: usize, j: usize, pos: bool| -> Sym { (Atom::Reg(i, j), pos) };
    let mut clauses: Vec<Vec<Sym>> = Vec::new();
    clauses.push(vec![x(1, false), s(1, 1, true)]);
    for j in 2..=k {
        clauses.push(vec![s(1, j, false)]);
    }
    for i in 2..n {
        clauses.push(vec![x(i, false), s(i, 1, true)]);
        clauses.push(vec![s(i - 1, 1, false), s(i, 1, true)]);
        for j in 2..=k {
            clauses.push(vec![x(i, false), s(i - 1, j - 1, false), s(i, j, true)]);
            clauses.push(vec![s(i - 1, j, false), s(i, j, true)]);
        }
        clauses.push(vec![x(i, false), s(i - 1, k, false)]);
    }
    clauses.push(vec![x(n, false), s(n - 1, k, false)]);

    if simplified {
        loop {
            let unit = clauses
                .iter()
                .find(|c| c.len() == 1 && matches!(c[0].0, Atom::Reg(..)))
                .map(|c| c[0]);
            let Some((atom, pos)) = unit else { break };
            clauses.retain(|c| !c.contains(&(atom, pos)));
            for c in &mut clauses {
                c.retain(|&l| l != (atom, !pos));
            }
        }
        loop {
            let pure = clauses.iter().flatten().find(|&&(atom, pos)| {
                matches!(atom, Atom::Reg(..)) && !clauses.iter().flatten().any(|&l| l == (atom, !pos))
            });
            let Some(&lit) = pure else { break };
            clauses.retain(|c| !c.contains(&lit));
        }
    }

    let mut regs: Vec<(usize, usize)> = clauses
        .iter()
        .flatten()
        .filter_map(|&(a, _)| match a {
            Atom::Reg(i, j) => Some((i, j)),
            Atom::Input(_) => None,
        })
        .collect();
    regs.sort_unstable();
    regs.dedup();
    let vars: Vec<Var> = regs.iter().map(|_| alloc.fresh()).collect();
    let lookup = |i: usize, j: usize| vars[regs.binary_search(&(i, j)).expect("register survived")];
    f.clauses = clauses
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|(a, pos)| match a {
                    Atom::Input(i) => {
                        if pos {
                            inputs[i]
                        } else {
                            !inputs[i]
                        }
                    }
                    Atom::Reg(i, j) => Lit::new(lookup(i, j), pos),
                })
                .collect()
        })
        .collect();
    f.aux = vars;
    Ok((f, regs))
}

/// Names `s<i>_<j>` of the registers `lt_seq_amk` keeps, in allocation order.
pub fn lt_seq_register_names(n: usize, k: usize, simplified: bool) -> Vec<String> {
    let inputs: Vec<Lit> = (1..=n as u32).map(|v| Var(v).pos()).collect();
    let mut alloc = VarCounter::starting_at(n as u32 + 1);
    lt_seq_impl(&inputs, k, &mut alloc, simplified)
        .map(|(_, regs)| regs.into_iter().map(|(i, j)| format!("s{i}_{j}")).collect())
        .unwrap_or_default()
}
