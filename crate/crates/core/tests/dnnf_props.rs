mod common;

use common::{instance, to_set};
use pcnnf_core::nnf::{enumerate_models, minimal_subtrees, transitive_edges, validate, Dnnf, NodeKind};

/// Index of the domain variable `<x_var = value>` in the flat list of all
/// domain variables.
fn flat(dnnf: &Dnnf, var: usize, value: usize) -> usize {
    dnnf.domains()[..var].iter().map(|d| d.size()).sum::<usize>() + value
}

/// Evaluates the DNNF with every leaf read as an independent boolean
/// variable (no exactly-one constraint between the values of a variable).
fn eval_relaxed(dnnf: &Dnnf, leaf_value: &[bool]) -> bool {
    let mut val = vec![false; dnnf.len()];
    for v in 0..dnnf.len() {
        val[v] = match &dnnf.node(v).kind {
            NodeKind::Leaf(dv) => leaf_value[flat(dnnf, dv.var, dv.value)],
            NodeKind::And(c) => c.iter().all(|&u| val[u]),
            NodeKind::Or(c) => c.iter().any(|&u| val[u]),
        };
    }
    val[dnnf.root()]
}

/// For every partial assignment α over the domain variables: the relaxed
/// function is satisfiable together with α exactly when some minimal
/// satisfying subtree uses no leaf that α sets to false.
#[test]
fn subtree_round_trip_over_all_partial_assignments() {
    let mut checked = 0;
    for inst in (0..60).filter_map(instance) {
        let dnnf = &inst.dnnf;
        let m: usize = dnnf.domains().iter().map(|d| d.size()).sum();
        if m > 12 {
            continue;
        }
        let trees = minimal_subtrees(dnnf, 1 << 20).unwrap();
        let tree_leaves: Vec<Vec<usize>> = trees
            .iter()
            .map(|t| {
                t.nodes
                    .ones()
                    .filter_map(|v| match dnnf.node(v).kind {
                        NodeKind::Leaf(dv) => Some(flat(dnnf, dv.var, dv.value)),
                        _ => None,
                    })
                    .collect()
            })
            .collect();
        let mut digits = vec![0u8; m];
        loop {
            // Unassigned and true variables can both be set to true: the
            // relaxed circuit is monotone.
            let free: Vec<bool> = digits.iter().map(|&d| d != 2).collect();
            let sat = eval_relaxed(dnnf, &free);
            let has_tree = tree_leaves.iter().any(|ls| ls.iter().all(|&l| free[l]));
            assert_eq!(sat, has_tree, "{} α digits {digits:?}", inst.label());
            checked += 1;
            let Some(i) = digits.iter().position(|&d| d < 2) else {
                break;
            };
            digits[i] += 1;
            digits[..i].iter_mut().for_each(|d| *d = 0);
        }
    }
    assert!(checked > 100_000, "only {checked} assignments checked");
}

#[test]
fn transitive_reduction_preserves_models() {
    let mut with_edges = 0;
    for inst in (0..200).filter_map(instance) {
        let (edges, reduced) = transitive_edges(&inst.dnnf);
        if !edges.is_empty() {
            with_edges += 1;
        }
        assert_eq!(
            to_set(enumerate_models(&reduced).unwrap()),
            to_set(enumerate_models(&inst.dnnf).unwrap()),
            "{}",
            inst.label()
        );
        assert!(transitive_edges(&reduced).0.is_empty());
    }
    assert!(with_edges > 0, "no instance had a transitive edge");
}

#[test]
fn generated_instances_are_valid_and_h_sets_closed_upwards() {
    for inst in (0..100).filter_map(instance) {
        let d = &inst.dnnf;
        assert!(validate(d).is_valid(), "{}", inst.label());
        for var in 0..d.num_vars() {
            for v in d.h_set(var) {
                assert!(d.parents(v).iter().all(|&p| d.in_h(var, p)), "{}", inst.label());
            }
        }
    }
}
