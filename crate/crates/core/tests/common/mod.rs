//! Seeded random instances shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use pcnnf_core::cnf::Cnf;
use pcnnf_core::encoder::{CnfEncoding, EncodingKind};
use pcnnf_core::nnf::{generate_random_smooth_dnnf, Dnnf, GeneratorLimits};
use pcnnf_core::pipeline::{claim_formula, prepare, Prepared};
use pcnnf_core::separator::LevelMode;

pub struct Instance {
    pub seed: u64,
    pub n: usize,
    pub d: usize,
    pub depth: usize,
    pub dnnf: Dnnf,
    pub prepared: Prepared,
    /// One encoding per kind, in `EncodingKind::ALL` order.
    pub encodings: Vec<CnfEncoding>,
}

impl Instance {
    pub fn label(&self) -> String {
        format!("seed={} n={} d={} depth={}", self.seed, self.n, self.d, self.depth)
    }

    pub fn max_vars(&self) -> u32 {
        self.encodings
            .iter()
            .map(|e| claim_formula(e).num_vars)
            .max()
            .unwrap_or(0)
    }

    pub fn is_boolean(&self) -> bool {
        self.dnnf.domains().iter().all(|d| {
            let mut v: Vec<&str> = d.values.iter().map(String::as_str).collect();
            v.sort_unstable();
            v == ["0", "1"]
        })
    }
}

/// Parameters cycle through n ∈ {2,3,4}, d ∈ {2,3}, depth ∈ {1,2,3}.
pub fn instance(seed: u64) -> Option<Instance> {
    let n = 2 + (seed % 3) as usize;
    let d = 2 + (seed / 3 % 2) as usize;
    let depth = 1 + (seed / 6 % 3) as usize;
    let dnnf = generate_random_smooth_dnnf(seed, n, d, depth, &GeneratorLimits::default()).ok()?;
    let prepared = prepare(&dnnf, LevelMode::MinPull).expect("generated DNNFs are coverable");
    let encodings = EncodingKind::ALL
        .iter()
        .map(|&k| prepared.encode(k).expect("generated DNNFs compile"))
        .collect();
    Some(Instance {
        seed,
        n,
        d,
        depth,
        dnnf,
        prepared,
        encodings,
    })
}

/// The first `count` instances with at least five nodes whose encodings
/// all have at most `max_vars` variables.
pub fn small_instances(count: usize, max_vars: u32) -> Vec<Instance> {
    (0..10_000)
        .filter_map(instance)
        .filter(|i| i.dnnf.len() >= 5 && i.max_vars() <= max_vars)
        .take(count)
        .collect()
}

/// Every model of `cnf` by plain enumeration of all `2^n` assignments.
pub fn brute_force_models(cnf: &Cnf) -> Vec<Vec<bool>> {
    let n = cnf.num_vars as usize;
    assert!(n <= 22, "brute force over {n} variables");
    (0..1u64 << n)
        .map(|m| (0..n).map(|i| m >> i & 1 == 1).collect::<Vec<bool>>())
        .filter(|a| cnf.satisfied_by(a))
        .collect()
}

/// Projects a model onto the domain variables (for a booleanized encoding,
/// onto its inputs). `None` for a model that is not d-consistent.
pub fn project_domain(enc: &CnfEncoding, model: &[bool]) -> Option<Vec<usize>> {
    enc.dom_lits
        .iter()
        .map(|lits| {
            let on: Vec<usize> = (0..lits.len())
                .filter(|&s| model[lits[s].var().index()] == lits[s].is_positive())
                .collect();
            (on.len() == 1).then(|| on[0])
        })
        .collect()
}

pub fn to_set<T: Ord>(v: impl IntoIterator<Item = T>) -> BTreeSet<T> {
    v.into_iter().collect()
}
