//! Smooth DNNFs over finite-domain variables: data model, text format,
//! structural checks and semantics.

mod generate;
mod parse;
mod semantics;
mod smooth;
mod subtree;
mod transitive;
mod validate;

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::error::DnnfError;

pub use generate::{generate_random_smooth_dnnf, mdd_expansion_dnnf, GeneratorLimits, DEFAULT_MAX_DOMAIN_VARS};
pub use parse::{parse_dnnf, parse_dnnf_with_warnings, ParseWarning};
pub use semantics::{enumerate_models, enumerate_models_capped, DEFAULT_MODEL_CAP};
pub use smooth::smooth_transform;
pub use subtree::{extract_minimal_subtree, minimal_subtrees, MinSatTree};
pub use transitive::transitive_edges;
pub use validate::{validate, ValidationReport, Violation};

/// Dense node index, assigned in declaration order.
pub type NodeIdx = usize;

/// A finite-domain input variable with its ordered value tokens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    pub name: String,
    pub values: Vec<String>,
}

impl Domain {
    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn value_index(&self, token: &str) -> Option<usize> {
        self.values.iter().position(|v| v == token)
    }
}

/// The domain variable `<x_var = value>`, as indices into the domain table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DomainVar {
    pub var: usize,
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf(DomainVar),
    And(Vec<NodeIdx>),
    /// A disjunction; with a single child it acts as a no-op node.
    Or(Vec<NodeIdx>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
}

impl Node {
    pub fn children(&self) -> &[NodeIdx] {
        match &self.kind {
            NodeKind::Leaf(_) => &[],
            NodeKind::And(c) | NodeKind::Or(c) => c,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.kind, NodeKind::Leaf(_))
    }

    pub fn is_or(&self) -> bool {
        matches!(self.kind, NodeKind::Or(_))
    }

    pub fn is_and(&self) -> bool {
        matches!(self.kind, NodeKind::And(_))
    }

    /// An inner node without children stands for a constant.
    pub fn is_constant(&self) -> bool {
        !self.is_leaf() && self.children().is_empty()
    }
}

/// A rooted DAG of and/or nodes whose leaves are domain variables.
///
/// Children always precede their parents in the node table, which makes the
/// graph acyclic by construction and gives every traversal a ready-made
/// topological order. A `Dnnf` is immutable once built.
#[derive(Clone, Debug)]
pub struct Dnnf {
    domains: Vec<Domain>,
    nodes: Vec<Node>,
    root: NodeIdx,
    var_sets: Vec<FixedBitSet>,
    parents: Vec<Vec<NodeIdx>>,
    leaves: HashMap<DomainVar, NodeIdx>,
    ids: HashMap<String, NodeIdx>,
    decomposable: bool,
    smooth: bool,
}

impl PartialEq for Dnnf {
    fn eq(&self, other: &Self) -> bool {
        self.domains == other.domains && self.nodes == other.nodes && self.root == other.root
    }
}

impl Eq for Dnnf {}

impl Dnnf {
    /// Builds a DNNF from a node table in which children precede parents.
    pub fn new(domains: Vec<Domain>, nodes: Vec<Node>, root: NodeIdx) -> Result<Dnnf, DnnfError> {
        Self::with_aliases(domains, nodes, root, Vec::new())
    }

    pub(crate) fn with_aliases(
        domains: Vec<Domain>,
        nodes: Vec<Node>,
        root: NodeIdx,
        aliases: Vec<(String, NodeIdx)>,
    ) -> Result<Dnnf, DnnfError> {
        let bad = |m: String| Err(DnnfError::Structure(m));
        if root >= nodes.len() {
            return bad(format!("root index {root} out of range"));
        }
        let mut names = HashMap::new();
        for d in &domains {
            if d.values.is_empty() {
                return bad(format!("variable `{}` has an empty domain", d.name));
            }
            if names.insert(d.name.as_str(), ()).is_some() {
                return bad(format!("variable `{}` declared twice", d.name));
            }
            let mut seen = HashMap::new();
            for v in &d.values {
                if seen.insert(v.as_str(), ()).is_some() {
                    return bad(format!("value `{v}` repeated in domain of `{}`", d.name));
                }
            }
        }

        let n = domains.len();
        let mut ids = HashMap::new();
        let mut leaves = HashMap::new();
        let mut var_sets = Vec::with_capacity(nodes.len());
        let mut parents = vec![Vec::new(); nodes.len()];
        for (idx, node) in nodes.iter().enumerate() {
            if ids.insert(node.id.clone(), idx).is_some() {
                return bad(format!("duplicate node id `{}`", node.id));
            }
            let mut set = FixedBitSet::with_capacity(n);
            match &node.kind {
                NodeKind::Leaf(dv) => {
                    if dv.var >= n || dv.value >= domains[dv.var].size() {
                        return bad(format!("leaf `{}` refers to an unknown domain value", node.id));
                    }
                    if leaves.insert(*dv, idx).is_some() {
                        return bad(format!("second leaf for the same domain value at `{}`", node.id));
                    }
                    set.insert(dv.var);
                }
                NodeKind::And(children) | NodeKind::Or(children) => {
                    for (k, &c) in children.iter().enumerate() {
                        if c >= idx {
                            return bad(format!("child {c} of `{}` is not declared before its parent", node.id));
                        }
                        if children[..k].contains(&c) {
                            return bad(format!("repeated child `{}` under `{}`", nodes[c].id, node.id));
                        }
                        set.union_with(&var_sets[c]);
                        parents[c].push(idx);
                    }
                }
            }
            var_sets.push(set);
        }
        for (alias, idx) in aliases {
            if idx >= nodes.len() || ids.insert(alias.clone(), idx).is_some() {
                return bad(format!("bad alias `{alias}`"));
            }
        }

        let mut dnnf = Dnnf {
            domains,
            nodes,
            root,
            var_sets,
            parents,
            leaves,
            ids,
            decomposable: true,
            smooth: true,
        };
        dnnf.decomposable = dnnf
            .nodes
            .iter()
            .enumerate()
            .all(|(v, node)| !node.is_and() || dnnf.decomposition_clash(v).is_none());
        dnnf.smooth =
            dnnf.nodes.iter().enumerate().all(|(v, node)| {
                !node.is_or() || node.children().iter().all(|&c| dnnf.var_sets[c] == dnnf.var_sets[v])
            });
        Ok(dnnf)
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, idx: NodeIdx) -> &Node {
        &self.nodes[idx]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> NodeIdx {
        self.root
    }

    pub fn id(&self, idx: NodeIdx) -> &str {
        &self.nodes[idx].id
    }

    pub fn index_of(&self, id: &str) -> Option<NodeIdx> {
        self.ids.get(id).copied()
    }

    pub fn children(&self, idx: NodeIdx) -> &[NodeIdx] {
        self.nodes[idx].children()
    }

    pub fn parents(&self, idx: NodeIdx) -> &[NodeIdx] {
        &self.parents[idx]
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.iter().map(|n| n.children().len()).sum()
    }

    /// `var(v)`: input variables with a leaf reachable from `v`.
    pub fn var_set(&self, idx: NodeIdx) -> &FixedBitSet {
        &self.var_sets[idx]
    }

    pub fn var_names(&self, idx: NodeIdx) -> Vec<&str> {
        self.var_sets[idx]
            .ones()
            .map(|i| self.domains[i].name.as_str())
            .collect()
    }

    pub fn leaf(&self, dv: DomainVar) -> Option<NodeIdx> {
        self.leaves.get(&dv).copied()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.domains.iter().position(|d| d.name == name)
    }

    /// Whether `idx` belongs to `H_i`, the nodes whose var-set contains `var`.
    pub fn in_h(&self, var: usize, idx: NodeIdx) -> bool {
        self.var_sets[idx].contains(var)
    }

    /// `H_i` in declaration order.
    pub fn h_set(&self, var: usize) -> Vec<NodeIdx> {
        (0..self.nodes.len()).filter(|&v| self.in_h(var, v)).collect()
    }

    /// `L_i`: the leaves labelled with a domain variable of `var`.
    pub fn leaves_of(&self, var: usize) -> Vec<NodeIdx> {
        (0..self.domains[var].size())
            .filter_map(|value| self.leaf(DomainVar { var, value }))
            .collect()
    }

    /// Children of `idx` inside `D_i`.
    pub fn children_in(&self, var: usize, idx: NodeIdx) -> impl Iterator<Item = NodeIdx> + '_ {
        self.children(idx).iter().copied().filter(move |&c| self.in_h(var, c))
    }

    pub fn is_decomposable(&self) -> bool {
        self.decomposable
    }

    pub fn is_smooth(&self) -> bool {
        self.decomposable && self.smooth
    }

    pub fn has_constants(&self) -> bool {
        self.nodes.iter().any(Node::is_constant)
    }

    /// Nodes reachable from the root.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        seen[self.root] = true;
        for v in (0..self.nodes.len()).rev() {
            if seen[v] {
                for &c in self.children(v) {
                    seen[c] = true;
                }
            }
        }
        seen
    }

    /// First pair of children of an and-node sharing a variable.
    pub(crate) fn decomposition_clash(&self, v: NodeIdx) -> Option<(NodeIdx, NodeIdx, usize)> {
        let children = self.children(v);
        for (i, &a) in children.iter().enumerate() {
            for &b in &children[i + 1..] {
                let mut common = self.var_sets[a].clone();
                common.intersect_with(&self.var_sets[b]);
                if let Some(var) = common.ones().next() {
                    return Some((a, b, var));
                }
            }
        }
        None
    }

    pub fn domain_var_name(&self, dv: DomainVar) -> String {
        let d = &self.domains[dv.var];
        format!("{}={}", d.name, d.values[dv.value])
    }

    /// Serializes to the line-oriented text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for d in &self.domains {
            let _ = writeln!(out, "domain {} {}", d.name, d.values.join(" "));
        }
        for node in &self.nodes {
            match &node.kind {
                NodeKind::Leaf(dv) => {
                    let _ = writeln!(out, "leaf {} {}", node.id, self.domain_var_name(*dv));
                }
                NodeKind::And(c) | NodeKind::Or(c) => {
                    let op = if node.is_and() { "and" } else { "or" };
                    let _ = write!(out, "{op} {}", node.id);
                    for &child in c {
                        let _ = write!(out, " {}", self.nodes[child].id);
                    }
                    out.push('\n');
                }
            }
        }
        let _ = writeln!(out, "root {}", self.nodes[self.root].id);
        out
    }
}

/// Incremental construction of a node table, shared by the generators and
/// the structural transforms.
#[derive(Default)]
pub(crate) struct NodeTable {
    pub nodes: Vec<Node>,
    pub ids: HashMap<String, NodeIdx>,
}

impl NodeTable {
    pub fn push(&mut self, id: String, kind: NodeKind) -> NodeIdx {
        let idx = self.nodes.len();
        let prev = self.ids.insert(id.clone(), idx);
        debug_assert!(prev.is_none(), "duplicate id {id}");
        self.nodes.push(Node { id, kind });
        idx
    }
}
