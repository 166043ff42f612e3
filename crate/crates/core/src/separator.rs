//! Level functions, edge subdivision and covers of `D_i` by separators.
//!
//! A separator of `D_i` is a node set met exactly once by every path of
//! `D_i` from the root to a leaf. [`build_cover`] subdivides every edge that
//! skips a level with one no-op node (a single-child disjunction) and then
//! reads the separators off the levels: `S_{i,j}` holds the nodes of `H_i`
//! at level `j`, the leaves of `L_i` above level `j`, and the no-ops of the
//! edges of `D_i` that jump over `j`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{CoverError, DnnfError};
use crate::nnf::{Dnnf, Node, NodeIdx, NodeKind};

/// Root-to-leaf paths enumerated per variable by [`validate_cover`].
pub const DEFAULT_PATH_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum LevelMode {
    /// Common path length; fails unless the DNNF is strictly leveled.
    Strict,
    /// Longest path from the root.
    MaxDepth,
    /// Leaves at their longest-path depth, inner nodes one above their
    /// lowest child.
    #[default]
    MinPull,
}

impl fmt::Display for LevelMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LevelMode::Strict => "strict",
            LevelMode::MaxDepth => "max-depth",
            LevelMode::MinPull => "min-pull",
        })
    }
}

impl std::str::FromStr for LevelMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "strict" => Ok(LevelMode::Strict),
            "max-depth" => Ok(LevelMode::MaxDepth),
            "min-pull" => Ok(LevelMode::MinPull),
            _ => Err(format!(
                "unknown level mode `{s}` (expected strict, max-depth or min-pull)"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelAssignment {
    pub mode: LevelMode,
    pub level: Vec<usize>,
}

fn structure(msg: String) -> CoverError {
    CoverError::Dnnf(DnnfError::Structure(msg))
}

/// Longest and shortest path length from the root to every node.
fn depths(dnnf: &Dnnf) -> Result<(Vec<usize>, Vec<usize>), CoverError> {
    let mut longest = vec![usize::MAX; dnnf.len()];
    let mut shortest = vec![usize::MAX; dnnf.len()];
    longest[dnnf.root()] = 0;
    shortest[dnnf.root()] = 0;
    for v in (0..dnnf.len()).rev() {
        if longest[v] == usize::MAX {
            continue;
        }
        for &c in dnnf.children(v) {
            longest[c] = if longest[c] == usize::MAX {
                longest[v] + 1
            } else {
                longest[c].max(longest[v] + 1)
            };
            shortest[c] = shortest[c].min(shortest[v] + 1);
        }
    }
    if let Some(v) = longest.iter().position(|&l| l == usize::MAX) {
        return Err(structure(format!("node `{}` is unreachable", dnnf.id(v))));
    }
    Ok((longest, shortest))
}

/// Computes a level function satisfying the input condition of the
/// subdivision: the root at 0, every leaf at its longest-path depth, and
/// levels strictly increasing along edges.
pub fn compute_levels(dnnf: &Dnnf, mode: LevelMode) -> Result<LevelAssignment, CoverError> {
    if let Some(v) = dnnf.nodes().iter().position(Node::is_constant) {
        return Err(structure(format!("constant node `{}`", dnnf.id(v))));
    }
    let (longest, shortest) = depths(dnnf)?;
    let level = match mode {
        LevelMode::MaxDepth => longest,
        LevelMode::Strict => {
            if let Some(v) = (0..dnnf.len()).find(|&v| longest[v] != shortest[v]) {
                return Err(CoverError::NotStrictlyLeveled(dnnf.id(v).to_string()));
            }
            longest
        }
        LevelMode::MinPull => {
            let mut level = vec![0; dnnf.len()];
            for v in 0..dnnf.len() {
                level[v] = match dnnf.children(v).iter().map(|&c| level[c]).min() {
                    None => longest[v],
                    Some(m) => m - 1,
                };
            }
            level[dnnf.root()] = 0;
            level
        }
    };
    Ok(LevelAssignment { mode, level })
}

/// Checks the input condition of the subdivision for `levels`.
pub fn check_levels(dnnf: &Dnnf, levels: &LevelAssignment) -> Result<(), CoverError> {
    let level = &levels.level;
    if level.len() != dnnf.len() {
        return Err(CoverError::LevelMismatch(format!(
            "{} levels for {} nodes",
            level.len(),
            dnnf.len()
        )));
    }
    if level[dnnf.root()] != 0 {
        return Err(CoverError::LevelMismatch("root level is not 0".into()));
    }
    let (longest, _) = depths(dnnf)?;
    for v in 0..dnnf.len() {
        if dnnf.node(v).is_leaf() && level[v] != longest[v] {
            return Err(CoverError::LevelMismatch(format!(
                "leaf `{}` at level {} instead of {}",
                dnnf.id(v),
                level[v],
                longest[v]
            )));
        }
        for &u in dnnf.children(v) {
            if level[v] >= level[u] {
                return Err(CoverError::BadLevels(dnnf.id(v).to_string(), dnnf.id(u).to_string()));
            }
        }
    }
    Ok(())
}

/// Separators for every variable, stored once per distinct node set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorCover {
    /// `per_var[i][j]` indexes the canonical separator standing for `S_{i,j+1}`.
    pub per_var: Vec<Vec<usize>>,
    /// Distinct separators in order of first occurrence, as ascending node
    /// indices of the subdivided DNNF.
    pub canonical: Vec<Vec<NodeIdx>>,
}

impl SeparatorCover {
    /// Deduplicates raw per-variable separator lists (each sorted).
    pub fn from_lists(lists: Vec<Vec<Vec<NodeIdx>>>) -> SeparatorCover {
        let mut index: HashMap<Vec<NodeIdx>, usize> = HashMap::new();
        let mut canonical = Vec::new();
        let per_var = lists
            .into_iter()
            .map(|seps| {
                seps.into_iter()
                    .map(|mut s| {
                        s.sort_unstable();
                        s.dedup();
                        *index.entry(s.clone()).or_insert_with(|| {
                            canonical.push(s);
                            canonical.len() - 1
                        })
                    })
                    .collect()
            })
            .collect();
        SeparatorCover { per_var, canonical }
    }

    pub fn separators(&self, var: usize) -> impl Iterator<Item = &[NodeIdx]> + '_ {
        self.per_var[var].iter().map(|&k| self.canonical[k].as_slice())
    }

    /// `t`: total size of the distinct separators.
    pub fn total_size(&self) -> usize {
        self.canonical.iter().map(Vec::len).sum()
    }

    pub fn to_json(&self, dnnf: &Dnnf) -> String {
        let doc: Vec<CoverEntry> = self
            .per_var
            .iter()
            .enumerate()
            .map(|(i, seps)| CoverEntry {
                var: i + 1,
                name: Some(dnnf.domains()[i].name.clone()),
                separators: seps
                    .iter()
                    .map(|&k| self.canonical[k].iter().map(|&v| dnnf.id(v).to_string()).collect())
                    .collect(),
            })
            .collect();
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }

    /// Reads a cover exported by [`SeparatorCover::to_json`] against the
    /// (subdivided) DNNF it refers to. No validity check is made here.
    pub fn from_json(dnnf: &Dnnf, text: &str) -> Result<SeparatorCover, CoverError> {
        let doc: Vec<CoverEntry> = serde_json::from_str(text).map_err(|e| CoverError::Json(e.to_string()))?;
        let mut lists = vec![Vec::new(); dnnf.num_vars()];
        let mut seen = vec![false; dnnf.num_vars()];
        for entry in doc {
            if entry.var == 0 || entry.var > dnnf.num_vars() {
                return Err(CoverError::Mismatch(format!(
                    "variable index {} out of range",
                    entry.var
                )));
            }
            let i = entry.var - 1;
            if let Some(name) = &entry.name {
                if *name != dnnf.domains()[i].name {
                    return Err(CoverError::Mismatch(format!(
                        "variable {} is `{}`, not `{name}`",
                        entry.var,
                        dnnf.domains()[i].name
                    )));
                }
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(CoverError::Mismatch(format!("variable {} listed twice", entry.var)));
            }
            for sep in entry.separators {
                let nodes = sep
                    .iter()
                    .map(|id| dnnf.index_of(id).ok_or_else(|| CoverError::UnknownNode(id.clone())))
                    .collect::<Result<Vec<_>, _>>()?;
                lists[i].push(nodes);
            }
        }
        Ok(SeparatorCover::from_lists(lists))
    }
}

#[derive(Serialize, Deserialize)]
struct CoverEntry {
    var: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    separators: Vec<Vec<String>>,
}

/// The subdivided DNNF `D'` with its cover.
#[derive(Clone, Debug)]
pub struct CoverResult {
    pub dnnf: Dnnf,
    pub cover: SeparatorCover,
    /// Number of no-op nodes added by the subdivision.
    pub added_noops: usize,
}

/// Subdivides every edge `(v, u)` with `Level(v) + 1 < Level(u)` by a single
/// no-op node `nop_<v>_<u>_1` and builds the separators `S_{i,1..d_i}`.
///
/// No-ops are placed directly before their parent in the node table, so
/// `D'` keeps the original relative order of nodes.
pub fn build_cover(dnnf: &Dnnf, levels: &LevelAssignment) -> Result<CoverResult, CoverError> {
    check_levels(dnnf, levels)?;
    let level = &levels.level;
    let original: HashSet<&str> = dnnf.nodes().iter().map(|n| n.id.as_str()).collect();

    let mut nodes: Vec<Node> = Vec::with_capacity(dnnf.len());
    let mut used: HashSet<String> = HashSet::new();
    let mut new_idx = vec![0; dnnf.len()];
    // (no-op index in D', level of parent, level of child, child in D)
    let mut noops: Vec<(NodeIdx, usize, usize, NodeIdx)> = Vec::new();
    for (v, node) in dnnf.nodes().iter().enumerate() {
        let mut children = Vec::with_capacity(node.children().len());
        for &u in node.children() {
            if level[v] + 1 < level[u] {
                let base = format!("nop_{}_{}_1", node.id, dnnf.id(u));
                let mut id = base.clone();
                let mut k = 2;
                while original.contains(id.as_str()) || used.contains(&id) {
                    id = format!("{base}_{k}");
                    k += 1;
                }
                used.insert(id.clone());
                noops.push((nodes.len(), level[v], level[u], u));
                children.push(nodes.len());
                nodes.push(Node {
                    id,
                    kind: NodeKind::Or(vec![new_idx[u]]),
                });
            } else {
                children.push(new_idx[u]);
            }
        }
        let kind = match &node.kind {
            NodeKind::Leaf(dv) => NodeKind::Leaf(*dv),
            NodeKind::And(_) => NodeKind::And(children),
            NodeKind::Or(_) => NodeKind::Or(children),
        };
        new_idx[v] = nodes.len();
        nodes.push(Node {
            id: node.id.clone(),
            kind,
        });
    }
    let added_noops = noops.len();
    let subdivided = Dnnf::new(dnnf.domains().to_vec(), nodes, new_idx[dnnf.root()])?;

    let mut lists = Vec::with_capacity(dnnf.num_vars());
    for var in 0..dnnf.num_vars() {
        let h = dnnf.h_set(var);
        let d_i = h.iter().map(|&v| level[v]).max().unwrap_or(0);
        let mut seps = Vec::with_capacity(d_i);
        for j in 1..=d_i {
            let mut s: Vec<NodeIdx> = h
                .iter()
                .filter(|&&v| level[v] == j || (dnnf.node(v).is_leaf() && level[v] < j))
                .map(|&v| new_idx[v])
                .collect();
            s.extend(
                noops
                    .iter()
                    .filter(|&&(_, lv, lu, u)| dnnf.in_h(var, u) && lv < j && j < lu)
                    .map(|&(w, ..)| w),
            );
            s.sort_unstable();
            seps.push(s);
        }
        lists.push(seps);
    }
    Ok(CoverResult {
        dnnf: subdivided,
        cover: SeparatorCover::from_lists(lists),
        added_noops,
    })
}

/// Whether every root-to-leaf path of `D_i` meets `set` exactly once,
/// decided by propagating the least and greatest hit counts bottom-up.
pub fn is_separator(dnnf: &Dnnf, var: usize, set: &[NodeIdx]) -> bool {
    let mut member = FixedBitSet::with_capacity(dnnf.len());
    for &v in set {
        if v >= dnnf.len() || !dnnf.in_h(var, v) {
            return false;
        }
        member.insert(v);
    }
    let mut lo = vec![0usize; dnnf.len()];
    let mut hi = vec![0usize; dnnf.len()];
    for v in 0..dnnf.len() {
        if !dnnf.in_h(var, v) {
            continue;
        }
        let own = usize::from(member.contains(v));
        let (mut l, mut h) = (usize::MAX, 0);
        for c in dnnf.children_in(var, v) {
            l = l.min(lo[c]);
            h = h.max(hi[c]);
        }
        if l == usize::MAX {
            l = 0;
        }
        lo[v] = (own + l).min(2);
        hi[v] = (own + h).min(2);
    }
    lo[dnnf.root()] == 1 && hi[dnnf.root()] == 1
}

/// Outcome of checking one separator against the paths of `D_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorCheck {
    pub nodes: Vec<String>,
    /// A root-to-leaf path that does not meet the separator exactly once.
    pub bad_path: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarCoverReport {
    pub var: String,
    pub paths: usize,
    pub separators: Vec<SeparatorCheck>,
    /// Nodes of `H_i \ {ρ}` in no separator.
    pub missing: Vec<String>,
    /// Separator members outside `H_i \ {ρ}`.
    pub extra: Vec<String>,
}

impl VarCoverReport {
    pub fn is_valid(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.separators.iter().all(|s| s.bad_path.is_none())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub vars: Vec<VarCoverReport>,
}

impl CoverReport {
    pub fn is_valid(&self) -> bool {
        self.vars.iter().all(VarCoverReport::is_valid)
    }
}

impl fmt::Display for CoverReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.vars {
            let status = if r.is_valid() { "ok" } else { "INVALID" };
            writeln!(
                f,
                "{}: {status}, {} separators, {} paths",
                r.var,
                r.separators.len(),
                r.paths
            )?;
            for (j, s) in r.separators.iter().enumerate() {
                if let Some(p) = &s.bad_path {
                    writeln!(
                        f,
                        "  S_{} {{{}}} is not met exactly once by {}",
                        j + 1,
                        s.nodes.join(", "),
                        p.join(" -> ")
                    )?;
                }
            }
            if !r.missing.is_empty() {
                writeln!(f, "  not covered: {}", r.missing.join(", "))?;
            }
            if !r.extra.is_empty() {
                writeln!(f, "  outside D_i: {}", r.extra.join(", "))?;
            }
        }
        Ok(())
    }
}

/// All root-to-leaf paths of `D_i`, or `None` above `cap`.
fn paths_of(dnnf: &Dnnf, var: usize, cap: usize) -> Option<Vec<Vec<NodeIdx>>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![dnnf.root()]];
    while let Some(path) = stack.pop() {
        let v = *path.last().expect("non-empty");
        let next: Vec<NodeIdx> = dnnf.children_in(var, v).collect();
        if next.is_empty() {
            if out.len() == cap {
                return None;
            }
            out.push(path);
            continue;
        }
        for &u in next.iter().rev() {
            let mut p = path.clone();
            p.push(u);
            stack.push(p);
        }
    }
    Some(out)
}

/// Checks a cover by enumerating every root-to-leaf path of each `D_i`.
pub fn validate_cover(dnnf: &Dnnf, cover: &SeparatorCover) -> Result<CoverReport, CoverError> {
    validate_cover_capped(dnnf, cover, DEFAULT_PATH_CAP)
}

pub fn validate_cover_capped(dnnf: &Dnnf, cover: &SeparatorCover, cap: usize) -> Result<CoverReport, CoverError> {
    if cover.per_var.len() != dnnf.num_vars() {
        return Err(CoverError::Mismatch(format!(
            "cover has {} variables, DNNF has {}",
            cover.per_var.len(),
            dnnf.num_vars()
        )));
    }
    if let Some(&v) = cover.canonical.iter().flatten().find(|&&v| v >= dnnf.len()) {
        return Err(CoverError::UnknownNode(format!("#{v}")));
    }
    let mut vars = Vec::with_capacity(dnnf.num_vars());
    for var in 0..dnnf.num_vars() {
        let name = dnnf.domains()[var].name.clone();
        if !dnnf.in_h(var, dnnf.root()) {
            return Err(CoverError::Mismatch(format!("root does not mention `{name}`")));
        }
        let paths = paths_of(dnnf, var, cap).ok_or(CoverError::PathCapExceeded { var: name.clone(), cap })?;
        let mut covered = BTreeSet::new();
        let mut extra = BTreeSet::new();
        let mut separators = Vec::new();
        for sep in cover.separators(var) {
            let member: HashSet<NodeIdx> = sep.iter().copied().collect();
            for &v in sep {
                if v == dnnf.root() || !dnnf.in_h(var, v) {
                    extra.insert(v);
                } else {
                    covered.insert(v);
                }
            }
            let bad_path = paths
                .iter()
                .find(|p| p.iter().filter(|v| member.contains(v)).count() != 1)
                .map(|p| p.iter().map(|&v| dnnf.id(v).to_string()).collect());
            separators.push(SeparatorCheck {
                nodes: sep.iter().map(|&v| dnnf.id(v).to_string()).collect(),
                bad_path,
            });
        }
        let missing = dnnf
            .h_set(var)
            .into_iter()
            .filter(|&v| v != dnnf.root() && !covered.contains(&v))
            .map(|v| dnnf.id(v).to_string())
            .collect();
        vars.push(VarCoverReport {
            var: name,
            paths: paths.len(),
            separators,
            missing,
            extra: extra.into_iter().map(|v| dnnf.id(v).to_string()).collect(),
        });
    }
    Ok(CoverReport { vars })
}

/// Exhaustive search for a cover of `D_var`: enumerates every subset of
/// `H_i \ {ρ}` and keeps the separators. A cover exists iff the separators
/// together cover `H_i \ {ρ}`; if so they are returned.
///
/// Refuses instances with more than `max_nodes` nodes in `H_i \ {ρ}`.
pub fn exhaustive_cover(dnnf: &Dnnf, var: usize, max_nodes: usize) -> Result<Option<Vec<Vec<NodeIdx>>>, CoverError> {
    let candidates: Vec<NodeIdx> = dnnf.h_set(var).into_iter().filter(|&v| v != dnnf.root()).collect();
    if candidates.len() > max_nodes.min(24) {
        return Err(structure(format!(
            "{} candidate nodes exceed the search limit of {}",
            candidates.len(),
            max_nodes.min(24)
        )));
    }
    let mut separators = Vec::new();
    let mut union = 0u32;
    for mask in 1u32..(1 << candidates.len()) {
        let set: Vec<NodeIdx> = (0..candidates.len())
            .filter(|&k| mask >> k & 1 == 1)
            .map(|k| candidates[k])
            .collect();
        if is_separator(dnnf, var, &set) {
            separators.push(set);
            union |= mask;
        }
    }
    let full = (1u32 << candidates.len()) - 1;
    Ok((union == full).then_some(separators))
}
