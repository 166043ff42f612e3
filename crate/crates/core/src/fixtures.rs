//! The worked examples as ready-made inputs.

use crate::cardinality::{amo_ladder, lt_seq_amk, lt_seq_register_names, VarCounter};
use crate::cnf::{Cnf, Lit, VarLabel, VarMap};

/// The four-variable DNNF with `ρ = a ∨ b`, `a = c ∧ e`, `b = d ∧ f`, where
/// `c`/`e` say `x1 = x2` / `x3 = x4` and `d`/`f` say they differ.
pub const FIG1: &str = "\
# rho = (x1 = x2 and x3 = x4) or (x1 != x2 and x3 != x4)
domain x1 0 1
domain x2 0 1
domain x3 0 1
domain x4 0 1
leaf x1_0 x1=0
leaf x1_1 x1=1
leaf x2_0 x2=0
leaf x2_1 x2=1
leaf x3_0 x3=0
leaf x3_1 x3=1
leaf x4_0 x4=0
leaf x4_1 x4=1
and c1 x1_1 x2_1
and c2 x1_0 x2_0
and d1 x1_0 x2_1
and d2 x1_1 x2_0
or c c1 c2
or d d1 d2
and e1 x3_1 x4_1
and e2 x3_0 x4_0
and f1 x3_1 x4_0
and f2 x3_0 x4_1
or e e1 e2
or f f1 f2
and a c e
and b d f
or rho a b
root rho
";

/// A single-variable DNNF containing the eight-node pattern that has no
/// transitive edge and still admits no cover by separators: `b2` shares a
/// path with `a1, b1, a4, b3`, the path `a1 → a2 → b3` forces `a2` and the
/// path `b1 → a3 → a4` forces `a3` into its separator, but `a2 → a3`.
/// Value 4 of `x1` has no leaf.
pub const FIG2_EMBED: &str = "\
domain x1 0 1 2 3 4 5
leaf x1_0 x1=0
leaf x1_1 x1=1
leaf x1_2 x1=2
leaf x1_3 x1=3
leaf x1_5 x1=5
or a4 x1_0 x1_1
or b3 x1_2 x1_3
or a3 a4 x1_5
or b2 a4 b3
or a2 a3 b3
or b1 a3 b2
or a1 a2 b2
or rho a1 b1
root rho
";

/// Boolean input `x<i>` labelled as the domain variable `<x<i>=1>`.
fn bool_input(map: &mut VarMap, i: usize) -> Lit {
    map.push(VarLabel::Dom {
        var: format!("x{i}"),
        value: "1".into(),
    })
    .pos()
}

/// At-least-2 over `x1..x4` (all four 3-clauses `x_a ∨ x_b ∨ x_c`) together
/// with the unit-propagation-simplified sequential counter for at-most-2.
///
/// Variables: `x1..x4` are 1–4, the registers `s1_1, s2_1, s2_2, s3_2` are
/// 5–8. The formula is an exactly-2 encoding whose refutation of
/// `¬s3_2 ∧ ¬x4` unit propagation misses.
pub fn amk_counterexample() -> (Cnf, VarMap) {
    let mut map = VarMap::new();
    let xs: Vec<Lit> = (1..=4).map(|i| bool_input(&mut map, i)).collect();
    let mut cnf = Cnf::new(0);
    for skip in (0..4).rev() {
        cnf.add(
            xs.iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &x)| x)
                .collect(),
        );
    }
    let mut alloc = VarCounter::starting_at(5);
    let theta = lt_seq_amk(&xs, 2, &mut alloc, true).expect("2 ≤ 4");
    for name in lt_seq_register_names(4, 2, true) {
        map.push(VarLabel::Aux { name });
    }
    cnf.extend(theta.clauses);
    cnf.num_vars = map.len() as u32;
    (cnf, map)
}

/// Exactly-one over `x1..x4` as the sequential at-most-one `μ_4` (with its
/// auxiliary `y`, variable 5) plus the clause `x1 ∨ x2 ∨ x3 ∨ x4`. Not
/// propagation complete: `¬x3 ∧ ¬x4` implies `y`.
pub fn eo_seq_counterexample() -> (Cnf, VarMap) {
    let mut map = VarMap::new();
    let xs: Vec<Lit> = (1..=4).map(|i| bool_input(&mut map, i)).collect();
    let mut alloc = VarCounter::starting_at(5);
    let mu = amo_ladder(&xs, &mut alloc).expect("four inputs");
    map.push(VarLabel::Aux { name: "y".into() });
    let mut cnf = Cnf::new(map.len() as u32);
    cnf.extend(mu.clauses);
    cnf.add(xs);
    (cnf, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Clause;

    fn sorted(mut clauses: Vec<Clause>) -> Vec<Clause> {
        for c in &mut clauses {
            c.sort_unstable();
        }
        clauses.sort();
        clauses
    }

    fn dimacs(v: &[&[i32]]) -> Vec<Clause> {
        v.iter()
            .map(|c| c.iter().map(|&x| Lit::from_dimacs(x).unwrap()).collect())
            .collect()
    }

    #[test]
    fn amk_counterexample_clauses() {
        let (cnf, map) = amk_counterexample();
        assert_eq!(cnf.num_vars, 8);
        assert_eq!(map.aux_var("s3_2"), Some(crate::cnf::Var(8)));
        // s11 = 5, s21 = 6, s22 = 7, s32 = 8
        let expected = dimacs(&[
            &[1, 2, 3],
            &[1, 2, 4],
            &[1, 3, 4],
            &[2, 3, 4],
            &[-1, 5],
            &[-2, -5, 7],
            &[-3, -7],
            &[-5, 6],
            &[-7, 8],
            &[-2, 6],
            &[-3, -6, 8],
            &[-4, -8],
        ]);
        assert_eq!(sorted(cnf.clauses), sorted(expected));
    }

    #[test]
    fn eo_seq_counterexample_clauses() {
        let (cnf, _) = eo_seq_counterexample();
        let expected = dimacs(&[
            &[-1, -2],
            &[-1, 5],
            &[-2, 5],
            &[-5, -3],
            &[-5, -4],
            &[-3, -4],
            &[1, 2, 3, 4],
        ]);
        assert_eq!(sorted(cnf.clauses), sorted(expected));
    }
}
