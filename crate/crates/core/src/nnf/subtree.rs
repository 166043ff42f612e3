use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use super::{Dnnf, NodeIdx, NodeKind};
use crate::error::DnnfError;

/// A minimal satisfying subtree `T`: the root, every child of each kept
/// and-node, and exactly one child of each kept or-node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinSatTree {
    /// Characteristic set of `T` over the node table (`γ_T`).
    pub nodes: FixedBitSet,
    /// `β_T`: the value index each variable receives from the leaves of `T`.
    pub beta: Vec<usize>,
}

impl MinSatTree {
    pub fn contains(&self, v: NodeIdx) -> bool {
        self.nodes.contains(v)
    }

    pub fn node_ids<'a>(&self, dnnf: &'a Dnnf) -> Vec<&'a str> {
        self.nodes.ones().map(|v| dnnf.id(v)).collect()
    }

    /// The structural predicate: rooted out-arborescence, and-nodes keep all
    /// children, or-nodes keep exactly one.
    pub fn is_minimal_subtree(dnnf: &Dnnf, nodes: &FixedBitSet) -> bool {
        if !nodes.contains(dnnf.root()) {
            return false;
        }
        for v in nodes.ones() {
            if v >= dnnf.len() {
                return false;
            }
            let kept = dnnf.children(v).iter().filter(|&&c| nodes.contains(c)).count();
            let ok = match &dnnf.node(v).kind {
                NodeKind::Leaf(_) => true,
                NodeKind::And(c) => kept == c.len(),
                NodeKind::Or(_) => kept == 1,
            };
            if !ok {
                return false;
            }
            let in_parents = dnnf.parents(v).iter().filter(|&&p| nodes.contains(p)).count();
            let expected = usize::from(v != dnnf.root());
            if in_parents != expected {
                return false;
            }
        }
        true
    }

    /// For every variable `i`, `T ∩ D_i` is a single path from the root to a
    /// leaf of `L_i`.
    pub fn meets_each_var_in_a_path(&self, dnnf: &Dnnf) -> bool {
        (0..dnnf.num_vars()).all(|var| {
            let mut v = dnnf.root();
            if !dnnf.in_h(var, v) {
                return false;
            }
            let mut visited = 1;
            loop {
                let next: Vec<NodeIdx> = dnnf.children_in(var, v).filter(|&c| self.nodes.contains(c)).collect();
                match next.as_slice() {
                    [] => break,
                    [u] => {
                        v = *u;
                        visited += 1;
                    }
                    _ => return false,
                }
            }
            let on_var = self.nodes.ones().filter(|&u| dnnf.in_h(var, u)).count();
            matches!(dnnf.node(v).kind, NodeKind::Leaf(dv) if dv.var == var) && visited == on_var
        })
    }
}

fn beta_of(dnnf: &Dnnf, nodes: &FixedBitSet) -> Vec<usize> {
    let mut beta = vec![usize::MAX; dnnf.num_vars()];
    for v in nodes.ones() {
        if let NodeKind::Leaf(dv) = dnnf.node(v).kind {
            beta[dv.var] = dv.value;
        }
    }
    debug_assert!(beta.iter().all(|&b| b != usize::MAX));
    beta
}

/// Extracts a minimal satisfying subtree top-down over the nodes that are
/// true under `assignment`, taking the lowest-index true child of each
/// or-node.
pub fn extract_minimal_subtree(dnnf: &Dnnf, assignment: &[usize]) -> Result<MinSatTree, DnnfError> {
    if !dnnf.is_smooth() {
        return Err(DnnfError::NotSmooth);
    }
    let val = dnnf.node_values(assignment)?;
    if !val[dnnf.root()] {
        return Err(DnnfError::NotSatisfying);
    }
    let mut nodes = FixedBitSet::with_capacity(dnnf.len());
    nodes.insert(dnnf.root());
    // Parents have larger indices than their children, so a descending sweep
    // sees every node after all of its parents.
    for v in (0..dnnf.len()).rev() {
        if !nodes.contains(v) {
            continue;
        }
        match &dnnf.node(v).kind {
            NodeKind::Leaf(_) => {}
            NodeKind::And(c) => c.iter().for_each(|&u| nodes.insert(u)),
            NodeKind::Or(c) => {
                let u = *c
                    .iter()
                    .filter(|&&u| val[u])
                    .min()
                    .expect("true or-node has a true child");
                nodes.insert(u);
            }
        }
    }
    let beta = beta_of(dnnf, &nodes);
    Ok(MinSatTree { nodes, beta })
}

/// Every minimal satisfying subtree, built bottom-up from the structure
/// alone (no evaluation), in ascending order of node sets.
pub fn minimal_subtrees(dnnf: &Dnnf, cap: usize) -> Result<Vec<MinSatTree>, DnnfError> {
    if !dnnf.is_smooth() {
        return Err(DnnfError::NotSmooth);
    }
    let reach = dnnf.reachable();
    let mut below: Vec<Vec<FixedBitSet>> = vec![Vec::new(); dnnf.len()];
    for v in 0..dnnf.len() {
        if !reach[v] {
            continue;
        }
        let mut own = FixedBitSet::with_capacity(dnnf.len());
        own.insert(v);
        let sets = match &dnnf.node(v).kind {
            NodeKind::Leaf(_) => vec![own],
            NodeKind::Or(c) => c
                .iter()
                .flat_map(|&u| below[u].iter())
                .map(|s| {
                    let mut s = s.clone();
                    s.insert(v);
                    s
                })
                .collect(),
            NodeKind::And(c) => {
                let mut acc = vec![own];
                for &u in c {
                    let mut next = Vec::with_capacity(acc.len() * below[u].len());
                    for a in &acc {
                        for b in &below[u] {
                            let mut s = a.clone();
                            s.union_with(b);
                            next.push(s);
                        }
                    }
                    acc = next;
                }
                acc
            }
        };
        if sets.len() > cap {
            return Err(DnnfError::CapExceeded {
                size: sets.len() as u128,
                cap: cap as u128,
            });
        }
        below[v] = sets;
    }
    let unique: BTreeSet<FixedBitSet> = std::mem::take(&mut below[dnnf.root()]).into_iter().collect();
    Ok(unique
        .into_iter()
        .map(|nodes| MinSatTree {
            beta: beta_of(dnnf, &nodes),
            nodes,
        })
        .collect())
}
