//! CNF encodings of smooth DNNFs.
//!
//! Every encoding shares the structural clauses
//!
//! | group | clause                                   | for                        |
//! |-------|------------------------------------------|----------------------------|
//! | N1    | `¬v ∨ v1 ∨ … ∨ vk`                       | or-node `v` (incl. no-ops) |
//! | N2    | `¬v ∨ vi`                                | and-node `v`, each child   |
//! | N3    | `¬v ∨ u1 ∨ … ∨ um`                       | non-root `v`, its parents  |
//! | N4    | `¬<x=s>`                                 | domain value without leaf  |
//! | root  | `ρ`                                      |                            |
//!
//! and adds one constraint per distinct separator `S` of the cover: pairwise
//! at-most-one (N5), pairwise exactly-one (N6), the ladder at-most-one (N5′)
//! or the chain exactly-one (N6′). Leaves are identified with their domain
//! variables.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::Serialize;

use crate::cardinality::{amo_ladder, amo_pairwise, eo_chain, eo_pairwise, VarCounter};
use crate::cnf::{self, Clause, Cnf, Lit, Var, VarLabel, VarMap};
use crate::error::EncodeError;
use crate::nnf::{validate, Dnnf, Domain, NodeKind, Violation};
use crate::separator::{is_separator, SeparatorCover};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EncodingKind {
    /// N1–N4 and the root unit.
    Full,
    /// URC: adds N5.
    PsiC,
    /// PC: adds N6.
    PsiP,
    /// URC with ladder at-most-one: adds N5′.
    PsiCCompact,
    /// PC with chain exactly-one: adds N6′.
    PsiPCompact,
}

impl EncodingKind {
    pub const ALL: [EncodingKind; 5] = [
        EncodingKind::Full,
        EncodingKind::PsiC,
        EncodingKind::PsiP,
        EncodingKind::PsiCCompact,
        EncodingKind::PsiPCompact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EncodingKind::Full => "full",
            EncodingKind::PsiC => "urc",
            EncodingKind::PsiP => "pc",
            EncodingKind::PsiCCompact => "urc-compact",
            EncodingKind::PsiPCompact => "pc-compact",
        }
    }

    pub fn separator_group(self) -> Option<ClauseGroup> {
        match self {
            EncodingKind::Full => None,
            EncodingKind::PsiC => Some(ClauseGroup::N5),
            EncodingKind::PsiP => Some(ClauseGroup::N6),
            EncodingKind::PsiCCompact => Some(ClauseGroup::N5Ladder),
            EncodingKind::PsiPCompact => Some(ClauseGroup::N6Chain),
        }
    }

    pub fn needs_cover(self) -> bool {
        self.separator_group().is_some()
    }

    /// Whether the encoding is meant to be unit refutation complete.
    pub fn is_urc(self) -> bool {
        self != EncodingKind::Full
    }

    /// Whether the encoding is meant to be propagation complete.
    pub fn is_pc(self) -> bool {
        matches!(self, EncodingKind::PsiP | EncodingKind::PsiPCompact)
    }
}

impl fmt::Display for EncodingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EncodingKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EncodingKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown encoding kind `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClauseGroup {
    N1,
    N2,
    N3,
    N4,
    N5,
    N6,
    N5Ladder,
    N6Chain,
    Root,
}

impl ClauseGroup {
    pub fn name(self) -> &'static str {
        match self {
            ClauseGroup::N1 => "N1",
            ClauseGroup::N2 => "N2",
            ClauseGroup::N3 => "N3",
            ClauseGroup::N4 => "N4",
            ClauseGroup::N5 => "N5",
            ClauseGroup::N6 => "N6",
            ClauseGroup::N5Ladder => "N5'",
            ClauseGroup::N6Chain => "N6'",
            ClauseGroup::Root => "root",
        }
    }
}

impl fmt::Display for ClauseGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Size parameters of the source of an encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSize {
    /// Number of input variables.
    pub n: usize,
    pub d_max: usize,
    /// Edges of the (subdivided) DNNF.
    pub e: usize,
    /// Total size of the distinct separators (0 without a cover).
    pub t: usize,
}

#[derive(Clone, Debug)]
pub struct CnfEncoding {
    pub kind: EncodingKind,
    pub varmap: VarMap,
    pub num_vars: u32,
    /// Clauses in emission order, each tagged with its group.
    pub clauses: Vec<(ClauseGroup, Clause)>,
    pub domains: Vec<Domain>,
    /// `dom_lits[i][s]` is the literal standing for `<x_i = s>`.
    pub dom_lits: Vec<Vec<Lit>>,
    /// The literal of every node of the encoded DNNF (leaves map to their
    /// domain literal).
    pub node_lits: Vec<Lit>,
    pub source: SourceSize,
    /// Set once the boolean substitution has been applied.
    pub boolean: bool,
}

impl CnfEncoding {
    pub fn to_cnf(&self) -> Cnf {
        Cnf {
            num_vars: self.num_vars,
            clauses: self.clauses.iter().map(|(_, c)| c.clone()).collect(),
        }
    }

    /// The direct-encoding constraints `EO(<x_i=·>)` for every variable, as
    /// pairwise at-most-one clauses plus one at-least-one clause. Empty once
    /// booleanized, where the substitution makes them tautological.
    pub fn direct_encoding_clauses(&self) -> Vec<Clause> {
        if self.boolean {
            return Vec::new();
        }
        self.dom_lits
            .iter()
            .flat_map(|lits| eo_pairwise(lits).clauses)
            .collect()
    }

    /// The encoding conjoined with the direct-encoding constraints, i.e. a
    /// formula over exactly the d-consistent assignments.
    pub fn to_cnf_with_direct_encoding(&self) -> Cnf {
        let mut cnf = self.to_cnf();
        cnf.extend(self.direct_encoding_clauses());
        cnf
    }

    pub fn group_counts(&self) -> BTreeMap<String, usize> {
        let mut groups = vec![
            ClauseGroup::N1,
            ClauseGroup::N2,
            ClauseGroup::N3,
            ClauseGroup::N4,
            ClauseGroup::Root,
        ];
        groups.extend(self.kind.separator_group());
        let mut counts: BTreeMap<String, usize> = groups.iter().map(|g| (g.name().to_string(), 0)).collect();
        for (g, _) in &self.clauses {
            *counts.entry(g.name().to_string()).or_default() += 1;
        }
        counts
    }

    pub fn clauses_in(&self, group: ClauseGroup) -> impl Iterator<Item = &Clause> + '_ {
        self.clauses.iter().filter(move |(g, _)| *g == group).map(|(_, c)| c)
    }

    pub fn stats(&self) -> EncodingStats {
        let SourceSize { n, d_max, e, t } = self.source;
        let clauses = self.clauses.len();
        let vars = self.num_vars as usize;
        EncodingStats {
            kind: self.kind.name().to_string(),
            boolean: self.boolean,
            n,
            d_max,
            e,
            t,
            vars,
            clauses: self.group_counts(),
            total_clauses: clauses,
            var_ratio: vars as f64 / (n * d_max + t).max(1) as f64,
            clause_ratio: clauses as f64 / (n * d_max + e + t).max(1) as f64,
        }
    }

    pub fn write_dimacs<W: Write>(&self, sink: &mut W) -> io::Result<()> {
        cnf::write_dimacs(&self.varmap, &self.to_cnf(), sink)
    }

    pub fn to_dimacs(&self) -> String {
        cnf::dimacs_string(&self.varmap, &self.to_cnf())
    }
}

/// Counts written next to every compiled encoding. `var_ratio` and
/// `clause_ratio` are the measured constants `vars / (n·d_max + t)` and
/// `clauses / (n·d_max + e + t)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EncodingStats {
    pub kind: String,
    pub boolean: bool,
    pub n: usize,
    pub d_max: usize,
    pub e: usize,
    pub t: usize,
    pub vars: usize,
    pub clauses: BTreeMap<String, usize>,
    pub total_clauses: usize,
    pub var_ratio: f64,
    pub clause_ratio: f64,
}

impl EncodingStats {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

fn check_source(dnnf: &Dnnf) -> Result<(), EncodeError> {
    let report = validate(dnnf);
    // Report the most fundamental problem first.
    let rank = |v: &Violation| match v {
        Violation::NotDecomposable { .. } => 0,
        Violation::Constant { .. } => 1,
        Violation::NotSmooth { .. } => 2,
        Violation::UnusedVariable { .. } => 3,
        Violation::Unreachable { .. } => 4,
    };
    match report.violations.iter().min_by_key(|v| rank(v)) {
        None => Ok(()),
        Some(Violation::NotDecomposable { .. }) => Err(EncodeError::NotDecomposable),
        Some(Violation::Constant { node }) => Err(EncodeError::Constant(node.clone())),
        Some(Violation::NotSmooth { .. }) => Err(EncodeError::NotSmooth),
        Some(other) => Err(EncodeError::Invalid(other.to_string())),
    }
}

fn check_cover(dnnf: &Dnnf, cover: &SeparatorCover) -> Result<(), EncodeError> {
    if cover.per_var.len() != dnnf.num_vars()
        || cover.per_var.iter().flatten().any(|&k| k >= cover.canonical.len())
        || cover.canonical.iter().flatten().any(|&v| v >= dnnf.len())
    {
        return Err(EncodeError::CoverMismatch(
            "cover refers to variables or nodes the DNNF does not have".into(),
        ));
    }
    for var in 0..dnnf.num_vars() {
        let name = &dnnf.domains()[var].name;
        let mut covered = vec![false; dnnf.len()];
        for (j, sep) in cover.separators(var).enumerate() {
            if !is_separator(dnnf, var, sep) {
                return Err(EncodeError::InvalidCover(format!(
                    "S_{{{name},{}}} is not a separator",
                    j + 1
                )));
            }
            for &v in sep {
                covered[v] = true;
            }
        }
        if let Some(v) = dnnf.h_set(var).into_iter().find(|&v| v != dnnf.root() && !covered[v]) {
            return Err(EncodeError::InvalidCover(format!(
                "node `{}` of D_{name} is in no separator",
                dnnf.id(v)
            )));
        }
    }
    Ok(())
}

/// The structural part alone: N1–N4 and the root unit.
pub fn emit_structural(dnnf: &Dnnf) -> Result<CnfEncoding, EncodeError> {
    compile(dnnf, None, EncodingKind::Full)
}

/// Compiles `dnnf` (already subdivided if `cover` came from
/// [`crate::separator::build_cover`]) into the encoding of the given kind.
///
/// Variables: domain variables first (variables in declaration order, values
/// in domain order), then inner nodes in node-table order, then the
/// auxiliaries of each distinct separator in order, named `z<sep>_<k>`.
pub fn compile(dnnf: &Dnnf, cover: Option<&SeparatorCover>, kind: EncodingKind) -> Result<CnfEncoding, EncodeError> {
    check_source(dnnf)?;
    let cover = match (kind.needs_cover(), cover) {
        (true, None) => return Err(EncodeError::MissingCover(kind.name().into())),
        (_, Some(c)) => {
            check_cover(dnnf, c)?;
            Some(c)
        }
        (false, None) => None,
    };

    let mut varmap = VarMap::new();
    let dom_lits: Vec<Vec<Lit>> = dnnf
        .domains()
        .iter()
        .map(|d| {
            d.values
                .iter()
                .map(|v| {
                    varmap
                        .push(VarLabel::Dom {
                            var: d.name.clone(),
                            value: v.clone(),
                        })
                        .pos()
                })
                .collect()
        })
        .collect();
    let node_lits: Vec<Lit> = dnnf
        .nodes()
        .iter()
        .map(|node| match node.kind {
            NodeKind::Leaf(dv) => dom_lits[dv.var][dv.value],
            _ => varmap.push(VarLabel::Node { id: node.id.clone() }).pos(),
        })
        .collect();

    let mut clauses: Vec<(ClauseGroup, Clause)> = Vec::new();
    for (v, node) in dnnf.nodes().iter().enumerate() {
        if let NodeKind::Or(children) = &node.kind {
            let mut c = vec![!node_lits[v]];
            c.extend(children.iter().map(|&u| node_lits[u]));
            clauses.push((ClauseGroup::N1, c));
        }
    }
    for (v, node) in dnnf.nodes().iter().enumerate() {
        if let NodeKind::And(children) = &node.kind {
            for &u in children {
                clauses.push((ClauseGroup::N2, vec![!node_lits[v], node_lits[u]]));
            }
        }
    }
    for v in 0..dnnf.len() {
        if v != dnnf.root() {
            let mut c = vec![!node_lits[v]];
            c.extend(dnnf.parents(v).iter().map(|&p| node_lits[p]));
            clauses.push((ClauseGroup::N3, c));
        }
    }
    for (var, d) in dnnf.domains().iter().enumerate() {
        for (value, &lit) in dom_lits[var].iter().enumerate().take(d.size()) {
            if dnnf.leaf(crate::nnf::DomainVar { var, value }).is_none() {
                clauses.push((ClauseGroup::N4, vec![!lit]));
            }
        }
    }

    let mut t = 0;
    if let (Some(cover), Some(group)) = (cover, kind.separator_group()) {
        t = cover.total_size();
        for (k, sep) in cover.canonical.iter().enumerate() {
            let lits: Vec<Lit> = sep.iter().map(|&v| node_lits[v]).collect();
            let mut alloc = VarCounter::starting_at(varmap.len() as u32 + 1);
            let fragment = match group {
                ClauseGroup::N5 => amo_pairwise(&lits),
                ClauseGroup::N6 => eo_pairwise(&lits),
                ClauseGroup::N5Ladder if lits.len() < 2 => amo_pairwise(&lits),
                ClauseGroup::N5Ladder => amo_ladder(&lits, &mut alloc).expect("at least two inputs"),
                ClauseGroup::N6Chain => eo_chain(&lits, &mut alloc),
                _ => unreachable!("not a separator group"),
            };
            for (m, &z) in fragment.aux.iter().enumerate() {
                let got = varmap.push(VarLabel::Aux {
                    name: format!("z{}_{}", k + 1, m + 1),
                });
                debug_assert_eq!(got, z);
            }
            clauses.extend(fragment.clauses.into_iter().map(|c| (group, c)));
        }
    } else if let Some(cover) = cover {
        t = cover.total_size();
    }
    clauses.push((ClauseGroup::Root, vec![node_lits[dnnf.root()]]));

    Ok(CnfEncoding {
        kind,
        num_vars: varmap.len() as u32,
        varmap,
        clauses,
        domains: dnnf.domains().to_vec(),
        dom_lits,
        node_lits,
        source: SourceSize {
            n: dnnf.num_vars(),
            d_max: dnnf.domains().iter().map(Domain::size).max().unwrap_or(0),
            e: dnnf.edge_count(),
            t,
        },
        boolean: false,
    })
}

/// Substitutes `<x=1> ← x` and `<x=0> ← ¬x` for every variable (all domains
/// must be `{0, 1}`), drops tautologies and repeated literals, and renumbers:
/// the boolean inputs take ids `1..=n` in variable order.
pub fn booleanize(enc: &CnfEncoding) -> Result<CnfEncoding, EncodeError> {
    if enc.boolean {
        return Err(EncodeError::AlreadyBoolean);
    }
    let mut one_index = Vec::with_capacity(enc.domains.len());
    for d in &enc.domains {
        let mut values: Vec<&str> = d.values.iter().map(String::as_str).collect();
        values.sort_unstable();
        if values != ["0", "1"] {
            return Err(EncodeError::NonBoolean(d.name.clone()));
        }
        one_index.push(d.value_index("1").expect("checked above"));
    }

    let mut varmap = VarMap::new();
    let xs: Vec<Var> = enc
        .domains
        .iter()
        .map(|d| {
            varmap.push(VarLabel::Dom {
                var: d.name.clone(),
                value: "1".into(),
            })
        })
        .collect();
    // Old variable → new literal (positive meaning).
    let mut subst: Vec<Option<Lit>> = vec![None; enc.num_vars as usize + 1];
    for (i, lits) in enc.dom_lits.iter().enumerate() {
        for (s, lit) in lits.iter().enumerate() {
            subst[lit.var().0 as usize] = Some(Lit::new(xs[i], s == one_index[i]));
        }
    }
    for (var, label) in enc.varmap.iter() {
        if subst[var.0 as usize].is_none() {
            subst[var.0 as usize] = Some(varmap.push(label.clone()).pos());
        }
    }
    let map_lit = |l: Lit| {
        let base = subst[l.var().0 as usize].expect("every variable is labelled");
        if l.is_positive() {
            base
        } else {
            !base
        }
    };

    let mut clauses = Vec::with_capacity(enc.clauses.len());
    for (g, c) in &enc.clauses {
        let mut out: Clause = Vec::with_capacity(c.len());
        let mut tautology = false;
        for &l in c {
            let m = map_lit(l);
            if out.contains(&!m) {
                tautology = true;
                break;
            }
            if !out.contains(&m) {
                out.push(m);
            }
        }
        if !tautology {
            clauses.push((*g, out));
        }
    }
    Ok(CnfEncoding {
        kind: enc.kind,
        num_vars: varmap.len() as u32,
        varmap,
        clauses,
        domains: enc.domains.clone(),
        dom_lits: enc
            .dom_lits
            .iter()
            .map(|ls| ls.iter().map(|&l| map_lit(l)).collect())
            .collect(),
        node_lits: enc.node_lits.iter().map(|&l| map_lit(l)).collect(),
        source: enc.source,
        boolean: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::read_dimacs;
    use crate::nnf::parse_dnnf;
    use crate::nnf::tests::fig1;
    use crate::separator::{build_cover, compute_levels, LevelMode};

    fn names(enc: &CnfEncoding, c: &Clause) -> Vec<String> {
        c.iter().map(|&l| enc.varmap.describe(l)).collect()
    }

    fn fig1_cover() -> (Dnnf, SeparatorCover) {
        let d = fig1();
        let r = build_cover(&d, &compute_levels(&d, LevelMode::MinPull).unwrap()).unwrap();
        (r.dnnf, r.cover)
    }

    #[test]
    fn fig1_structural_clauses() {
        let enc = emit_structural(&fig1()).unwrap();
        let n1: Vec<Vec<String>> = enc.clauses_in(ClauseGroup::N1).map(|c| names(&enc, c)).collect();
        assert!(n1.contains(&vec!["-rho".into(), "a".into(), "b".into()]));
        let n3: Vec<Vec<String>> = enc.clauses_in(ClauseGroup::N3).map(|c| names(&enc, c)).collect();
        assert!(n3.contains(&vec!["-c".into(), "a".into()]));
        assert_eq!(enc.clauses_in(ClauseGroup::N4).count(), 0);
        let counts = enc.group_counts();
        // 5 or-nodes, 10 and-nodes with 2 children, 22 non-root nodes
        assert_eq!(counts["N1"], 5);
        assert_eq!(counts["N2"], 20);
        assert_eq!(counts["N3"], 22);
        assert_eq!(counts["root"], 1);
        assert_eq!(enc.num_vars, 8 + 15);
    }

    #[test]
    fn single_leaf_unused_value() {
        let d = parse_dnnf("domain x1 0 1\nleaf n1 x1=0; root n1").unwrap();
        let enc = emit_structural(&d).unwrap();
        let n4: Vec<Vec<String>> = enc.clauses_in(ClauseGroup::N4).map(|c| names(&enc, c)).collect();
        assert_eq!(n4, vec![vec!["-<x1=1>".to_string()]]);
        let root: Vec<Vec<String>> = enc.clauses_in(ClauseGroup::Root).map(|c| names(&enc, c)).collect();
        assert_eq!(root, vec![vec!["<x1=0>".to_string()]]);
    }

    #[test]
    fn separator_groups() {
        let (d, cover) = fig1_cover();
        let enc = compile(&d, Some(&cover), EncodingKind::PsiC).unwrap();
        let n5: Vec<Vec<String>> = enc.clauses_in(ClauseGroup::N5).map(|c| names(&enc, c)).collect();
        assert!(n5.contains(&vec!["-c".into(), "-d".into()]));
        let full = emit_structural(&d).unwrap();
        // FullNNF ⊆ ψ_c, and ψ_p = ψ_c with N5 swapped for N6.
        let psi_p = compile(&d, Some(&cover), EncodingKind::PsiP).unwrap();
        for (g, c) in &full.clauses {
            assert!(enc.clauses.contains(&(*g, c.clone())));
        }
        let strip = |e: &CnfEncoding, g: ClauseGroup| -> Vec<Clause> {
            e.clauses
                .iter()
                .filter(|(h, _)| *h != g)
                .map(|(_, c)| c.clone())
                .collect()
        };
        assert_eq!(strip(&enc, ClauseGroup::N5), strip(&psi_p, ClauseGroup::N6));
        let n5: Vec<Clause> = enc.clauses_in(ClauseGroup::N5).cloned().collect();
        for c in &n5 {
            assert!(psi_p.clauses_in(ClauseGroup::N6).any(|d| d == c));
        }
        assert_eq!(
            compile(&d, None, EncodingKind::PsiP).unwrap_err(),
            EncodeError::MissingCover("pc".into())
        );
    }

    #[test]
    fn singleton_separator_is_a_unit_in_psi_p() {
        let d = parse_dnnf("domain x 0 1\nleaf p x=0\nleaf q x=1\nor o p q\nor r o\nroot r\n").unwrap();
        let r = build_cover(&d, &compute_levels(&d, LevelMode::MinPull).unwrap()).unwrap();
        let enc = compile(&r.dnnf, Some(&r.cover), EncodingKind::PsiP).unwrap();
        let n6: Vec<Vec<String>> = enc.clauses_in(ClauseGroup::N6).map(|c| names(&enc, c)).collect();
        assert!(n6.contains(&vec!["o".to_string()]));
    }

    #[test]
    fn compact_kinds_name_their_auxiliaries() {
        let (d, cover) = fig1_cover();
        let enc = compile(&d, Some(&cover), EncodingKind::PsiPCompact).unwrap();
        // the four-node separator {c1,c2,d1,d2} is the only one needing one
        let aux: Vec<String> = enc
            .varmap
            .iter()
            .filter_map(|(_, l)| match l {
                VarLabel::Aux { name } => Some(name.clone()),
                _ => None,
            })
            .collect();
        assert_eq!(aux.len(), 2);
        assert!(aux.iter().all(|a| a.starts_with('z') && a.ends_with("_1")));
        let doc = read_dimacs(&enc.to_dimacs()).unwrap();
        assert_eq!(doc.cnf, enc.to_cnf());
        assert_eq!(doc.map, enc.varmap);
        let stats = enc.stats();
        assert_eq!(stats.vars as u32, doc.cnf.num_vars);
        assert_eq!(stats.total_clauses, doc.cnf.clauses.len());
        assert_eq!(stats.clauses.values().sum::<usize>(), stats.total_clauses);
    }

    #[test]
    fn rejects_unsuitable_input() {
        let d = parse_dnnf(
            "domain x1 0 1\ndomain x2 0 1\nleaf p x1=0\nleaf q x1=1\nleaf r x2=0\nand a q r\nor o p a\nroot o\n",
        )
        .unwrap();
        assert_eq!(emit_structural(&d).unwrap_err(), EncodeError::NotSmooth);
        let d = parse_dnnf("domain x1 0 1\nleaf p x1=0\nleaf q x1=1\nand a p q\nroot a\n").unwrap();
        assert_eq!(emit_structural(&d).unwrap_err(), EncodeError::NotDecomposable);
        let (d, cover) = fig1_cover();
        let mut broken = cover.clone();
        broken.canonical[1].pop();
        assert!(matches!(
            compile(&d, Some(&broken), EncodingKind::PsiC),
            Err(EncodeError::InvalidCover(_))
        ));
    }

    #[test]
    fn booleanize_collapses_domain_pairs() {
        let (d, cover) = fig1_cover();
        let enc = compile(&d, Some(&cover), EncodingKind::PsiP).unwrap();
        let b = booleanize(&enc).unwrap();
        assert_eq!(b.num_vars, enc.num_vars - 4);
        assert_eq!(b.dom_lits[0], vec![Var(1).neg(), Var(1).pos()]);
        // both clauses of EO over a leaf separator {<x=0>, <x=1>} become
        // tautologies
        assert!(b.clauses.len() < enc.clauses.len());
        for (_, c) in &b.clauses {
            for (i, l) in c.iter().enumerate() {
                assert!(!c[i + 1..].contains(&!*l) && !c[i + 1..].contains(l));
            }
        }
        assert_eq!(booleanize(&b).unwrap_err(), EncodeError::AlreadyBoolean);
        let d3 = parse_dnnf("domain y 0 1 2\nleaf p y=0\nroot p\n").unwrap();
        assert_eq!(
            booleanize(&emit_structural(&d3).unwrap()).unwrap_err(),
            EncodeError::NonBoolean("y".into())
        );
    }

    #[test]
    fn single_unit_document() {
        let d = parse_dnnf("domain x 0\nleaf l x=0\nor rho l\nroot rho\n").unwrap();
        let enc = emit_structural(&d).unwrap();
        let text = enc.to_dimacs();
        assert!(
            text.contains("c map dom x=0 1\nc map node rho 2\np cnf 2 3\n"),
            "{text}"
        );
    }
}
