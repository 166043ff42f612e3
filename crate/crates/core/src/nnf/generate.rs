//! Seeded instance generators for property tests and the size experiments.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Dnnf, Domain, DomainVar, NodeIdx, NodeKind, NodeTable};
use crate::error::DnnfError;

/// Default bound on `n·d`, which keeps instances inside the exhaustive
/// verifier's reach.
pub const DEFAULT_MAX_DOMAIN_VARS: usize = 16;

#[derive(Clone, Copy, Debug)]
pub struct GeneratorLimits {
    /// Upper bound on the number of domain variables `n·d`.
    pub max_domain_vars: usize,
    /// Probability of reusing an existing node over the same variables,
    /// which is what produces shared sub-circuits and long edges.
    pub reuse: f64,
}

impl Default for GeneratorLimits {
    fn default() -> Self {
        GeneratorLimits {
            max_domain_vars: DEFAULT_MAX_DOMAIN_VARS,
            reuse: 0.3,
        }
    }
}

fn domains(n: usize, d: usize) -> Vec<Domain> {
    (1..=n)
        .map(|i| Domain {
            name: format!("x{i}"),
            values: (0..d).map(|s| s.to_string()).collect(),
        })
        .collect()
}

struct Gen {
    rng: ChaCha8Rng,
    table: NodeTable,
    leaves: HashMap<DomainVar, NodeIdx>,
    consed: HashMap<(bool, Vec<NodeIdx>), NodeIdx>,
    by_scope: HashMap<Vec<usize>, Vec<NodeIdx>>,
    d: usize,
    reuse: f64,
}

impl Gen {
    fn leaf(&mut self, var: usize, value: usize) -> NodeIdx {
        let dv = DomainVar { var, value };
        if let Some(&l) = self.leaves.get(&dv) {
            return l;
        }
        let l = self.table.push(format!("x{}_{}", var + 1, value), NodeKind::Leaf(dv));
        self.leaves.insert(dv, l);
        l
    }

    /// Hash-consed inner node; a one-child disjunction collapses to its child.
    fn inner(&mut self, and: bool, mut children: Vec<NodeIdx>, scope: &[usize]) -> NodeIdx {
        if !and {
            children.sort_unstable();
            children.dedup();
            if children.len() == 1 {
                return children[0];
            }
        }
        let key = (and, {
            let mut k = children.clone();
            k.sort_unstable();
            k
        });
        if let Some(&v) = self.consed.get(&key) {
            return v;
        }
        let id = format!("v{}", self.consed.len() + 1);
        let kind = if and {
            NodeKind::And(children)
        } else {
            NodeKind::Or(children)
        };
        let v = self.table.push(id, kind);
        self.consed.insert(key, v);
        self.by_scope.entry(scope.to_vec()).or_default().push(v);
        v
    }

    fn build(&mut self, scope: &[usize], depth: usize) -> NodeIdx {
        if let Some(existing) = self.by_scope.get(scope) {
            if !existing.is_empty() && self.rng.gen_bool(self.reuse) {
                return *existing.choose(&mut self.rng).expect("non-empty");
            }
        }
        if scope.len() == 1 {
            let var = scope[0];
            if depth > 0 && self.rng.gen_bool(0.3) {
                let a = self.build(scope, depth - 1);
                let b = self.build(scope, depth - 1);
                return self.inner(false, vec![a, b], scope);
            }
            let k = self.rng.gen_range(1..=self.d);
            let mut values: Vec<usize> = (0..self.d).collect();
            values.shuffle(&mut self.rng);
            values.truncate(k);
            values.sort_unstable();
            let leaves: Vec<NodeIdx> = values.into_iter().map(|s| self.leaf(var, s)).collect();
            return self.inner(false, leaves, scope);
        }
        if depth == 0 || self.rng.gen_bool(0.6) {
            let blocks = if depth == 0 {
                scope.len()
            } else {
                self.rng.gen_range(2..=scope.len().min(3))
            };
            let mut shuffled = scope.to_vec();
            shuffled.shuffle(&mut self.rng);
            let mut parts: Vec<Vec<usize>> = vec![Vec::new(); blocks];
            for (k, &var) in shuffled.iter().enumerate() {
                // The first `blocks` variables seed the blocks so none is empty.
                let b = if k < blocks { k } else { self.rng.gen_range(0..blocks) };
                parts[b].push(var);
            }
            let children: Vec<NodeIdx> = parts
                .into_iter()
                .map(|mut p| {
                    p.sort_unstable();
                    self.build(&p, depth.saturating_sub(1))
                })
                .collect();
            self.inner(true, children, scope)
        } else {
            let k = self.rng.gen_range(2..=3);
            let children = (0..k).map(|_| self.build(scope, depth - 1)).collect();
            self.inner(false, children, scope)
        }
    }
}

/// A random smooth, decomposable, constant-free DNNF over `x1..xn`, each
/// with domain `0..d`. Deterministic in `seed`.
///
/// Conjunctions split their scope into two or three blocks, disjunctions
/// repeat their scope in every child, and nodes over a scope seen before
/// are reused with probability `limits.reuse`. Leaves over a single variable
/// take a random non-empty subset of its values, so some domain values are
/// typically left without a leaf.
pub fn generate_random_smooth_dnnf(
    seed: u64,
    n: usize,
    d: usize,
    depth: usize,
    limits: &GeneratorLimits,
) -> Result<Dnnf, DnnfError> {
    if n == 0 || d == 0 {
        return Err(DnnfError::Infeasible("need n ≥ 1 and d ≥ 1".into()));
    }
    if n * d > limits.max_domain_vars {
        return Err(DnnfError::Infeasible(format!(
            "n·d = {} exceeds the limit of {}",
            n * d,
            limits.max_domain_vars
        )));
    }
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
        table: NodeTable::default(),
        leaves: HashMap::new(),
        consed: HashMap::new(),
        by_scope: HashMap::new(),
        d,
        reuse: limits.reuse,
    };
    let scope: Vec<usize> = (0..n).collect();
    let root = g.build(&scope, depth);
    Dnnf::new(domains(n, d), g.table.nodes, root)
}

/// The DNNF expansion of a random layered MDD over `x1..xn` with domain
/// `0..d` and at most `width` decision nodes per layer.
///
/// Each decision node becomes a disjunction of one conjunction
/// `<x_i=s> ∧ child` per value `s` whose edge does not lead to the
/// 0-terminal; in the last layer the leaves stand in for the conjunctions.
/// The result is strictly leveled and has `Θ(md)` nodes and edges for `m`
/// decision nodes.
pub fn mdd_expansion_dnnf(seed: u64, n: usize, d: usize, width: usize) -> Result<Dnnf, DnnfError> {
    if n == 0 || d == 0 || width == 0 {
        return Err(DnnfError::Infeasible("need n, d, width ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // edges[i][j][s]: child index in layer i+1, None for the 0-terminal (or
    // for the 1-terminal in the last layer, distinguished by `last_true`).
    let mut layer_sizes = vec![1usize];
    let mut edges: Vec<Vec<Vec<Option<usize>>>> = Vec::with_capacity(n);
    for i in 0..n {
        let last = i + 1 == n;
        let mut next_used: Vec<usize> = Vec::new();
        let mut layer = Vec::with_capacity(layer_sizes[i]);
        for _ in 0..layer_sizes[i] {
            let mut out: Vec<Option<usize>> = (0..d)
                .map(|_| {
                    if rng.gen_bool(0.25) {
                        None
                    } else if last {
                        Some(0)
                    } else {
                        Some(rng.gen_range(0..width))
                    }
                })
                .collect();
            if out.iter().all(Option::is_none) {
                let s = rng.gen_range(0..d);
                out[s] = Some(if last { 0 } else { rng.gen_range(0..width) });
            }
            if !last {
                next_used.extend(out.iter().flatten());
            }
            layer.push(out);
        }
        // Compact the referenced child indices of the next layer.
        next_used.sort_unstable();
        next_used.dedup();
        for out in &mut layer {
            for e in out.iter_mut().flatten() {
                if !last {
                    *e = next_used.binary_search(e).expect("collected above");
                }
            }
        }
        edges.push(layer);
        if !last {
            layer_sizes.push(next_used.len());
        }
    }

    let mut table = NodeTable::default();
    let mut leaf_idx: HashMap<DomainVar, NodeIdx> = HashMap::new();
    let mut below: Vec<NodeIdx> = Vec::new();
    for i in (0..n).rev() {
        let last = i + 1 == n;
        let mut here = Vec::with_capacity(edges[i].len());
        for (j, out) in edges[i].iter().enumerate() {
            let mut disjuncts = Vec::new();
            for (s, e) in out.iter().enumerate() {
                let Some(child) = e else { continue };
                let dv = DomainVar { var: i, value: s };
                let leaf = *leaf_idx
                    .entry(dv)
                    .or_insert_with(|| table.push(format!("x{}_{}", i + 1, s), NodeKind::Leaf(dv)));
                if last {
                    disjuncts.push(leaf);
                } else {
                    disjuncts.push(table.push(
                        format!("m{}_{}_{}", i + 1, j + 1, s),
                        NodeKind::And(vec![leaf, below[*child]]),
                    ));
                }
            }
            here.push(table.push(format!("m{}_{}", i + 1, j + 1), NodeKind::Or(disjuncts)));
        }
        below = here;
    }
    Dnnf::new(domains(n, d), table.nodes, below[0])
}
