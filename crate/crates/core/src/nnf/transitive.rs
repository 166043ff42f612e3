use fixedbitset::FixedBitSet;

use super::{Dnnf, Node, NodeIdx, NodeKind};

/// Strict descendants of every node.
pub(crate) fn descendants(dnnf: &Dnnf) -> Vec<FixedBitSet> {
    let mut desc: Vec<FixedBitSet> = Vec::with_capacity(dnnf.len());
    for v in 0..dnnf.len() {
        let mut set = FixedBitSet::with_capacity(dnnf.len());
        for &c in dnnf.children(v) {
            set.insert(c);
            set.union_with(&desc[c]);
        }
        desc.push(set);
    }
    desc
}

/// Edges `(v, u)` for which another path from `v` to `u` exists, together
/// with the DNNF obtained by deleting all of them. Node indices are kept.
///
/// In a smooth DNNF such an edge can only leave an or-node, and the
/// alternative path runs through nodes over the same variables, so the
/// deletion does not change the represented function.
pub fn transitive_edges(dnnf: &Dnnf) -> (Vec<(NodeIdx, NodeIdx)>, Dnnf) {
    let desc = descendants(dnnf);
    let mut edges = Vec::new();
    let mut nodes: Vec<Node> = Vec::with_capacity(dnnf.len());
    for (v, node) in dnnf.nodes().iter().enumerate() {
        let children = node.children();
        let keep: Vec<NodeIdx> = children
            .iter()
            .copied()
            .filter(|&u| {
                let skip = children.iter().any(|&w| w != u && desc[w].contains(u));
                if skip {
                    edges.push((v, u));
                }
                !skip
            })
            .collect();
        let kind = match &node.kind {
            NodeKind::Leaf(dv) => NodeKind::Leaf(*dv),
            NodeKind::And(_) => NodeKind::And(keep),
            NodeKind::Or(_) => NodeKind::Or(keep),
        };
        nodes.push(Node {
            id: node.id.clone(),
            kind,
        });
    }
    let reduced = Dnnf::new(dnnf.domains().to_vec(), nodes, dnnf.root())
        .expect("deleting edges keeps the node table well-formed");
    (edges, reduced)
}
