use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use super::{Dnnf, DomainVar, NodeIdx, NodeKind, NodeTable};
use crate::error::DnnfError;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mapped {
    True,
    False,
    Node(NodeIdx),
}

struct Builder<'a> {
    src: &'a Dnnf,
    table: NodeTable,
    var_sets: Vec<FixedBitSet>,
    reserved: HashSet<&'a str>,
    leaves: HashMap<DomainVar, NodeIdx>,
    gadgets: HashMap<usize, NodeIdx>,
    wrappers: HashMap<(NodeIdx, Vec<usize>), NodeIdx>,
}

impl<'a> Builder<'a> {
    fn fresh(&self, base: &str) -> String {
        let taken = |id: &str| self.table.ids.contains_key(id) || self.reserved.contains(id);
        if !taken(base) {
            return base.to_string();
        }
        (2..)
            .map(|k| format!("{base}_{k}"))
            .find(|id| !taken(id))
            .expect("unbounded")
    }

    fn push(&mut self, id: String, kind: NodeKind) -> NodeIdx {
        let mut set = FixedBitSet::with_capacity(self.src.num_vars());
        match &kind {
            NodeKind::Leaf(dv) => set.insert(dv.var),
            NodeKind::And(c) | NodeKind::Or(c) => {
                for &u in c {
                    set.union_with(&self.var_sets[u]);
                }
            }
        }
        self.var_sets.push(set);
        self.table.push(id, kind)
    }

    fn leaf(&mut self, dv: DomainVar) -> NodeIdx {
        if let Some(&idx) = self.leaves.get(&dv) {
            return idx;
        }
        let id = match self.src.leaf(dv) {
            Some(orig) => self.src.id(orig).to_string(),
            None => {
                let d = &self.src.domains()[dv.var];
                self.fresh(&format!("{}_{}", d.name, d.values[dv.value]))
            }
        };
        let idx = self.push(id, NodeKind::Leaf(dv));
        self.leaves.insert(dv, idx);
        idx
    }

    /// `⋁_s <x=s>` for variable `var`.
    fn gadget(&mut self, var: usize) -> NodeIdx {
        if let Some(&g) = self.gadgets.get(&var) {
            return g;
        }
        let size = self.src.domains()[var].size();
        let leaves: Vec<NodeIdx> = (0..size).map(|value| self.leaf(DomainVar { var, value })).collect();
        let g = if size == 1 {
            leaves[0]
        } else {
            let id = self.fresh(&format!("any_{}", self.src.domains()[var].name));
            self.push(id, NodeKind::Or(leaves))
        };
        self.gadgets.insert(var, g);
        g
    }

    /// `child ∧ ⋀_{x ∈ missing} gadget(x)`.
    fn wrap(&mut self, child: NodeIdx, missing: Vec<usize>) -> NodeIdx {
        if missing.is_empty() {
            return child;
        }
        if let Some(&w) = self.wrappers.get(&(child, missing.clone())) {
            return w;
        }
        let mut children = vec![child];
        for &var in &missing {
            children.push(self.gadget(var));
        }
        let names: Vec<&str> = missing.iter().map(|&v| self.src.domains()[v].name.as_str()).collect();
        let base = format!("smooth_{}_{}", self.table.nodes[child].id, names.join("_"));
        let id = self.fresh(&base);
        let w = self.push(id, NodeKind::And(children));
        self.wrappers.insert((child, missing), w);
        w
    }
}

/// Returns an equivalent smooth, constant-free DNNF whose root mentions
/// every variable.
///
/// Constants are propagated away first. Each or-child missing variables of
/// its parent is then conjoined with one `⋁_s <x=s>` gadget per missing
/// variable; a root that misses variables is wrapped the same way. Input
/// that is already smooth, constant-free and complete is returned unchanged.
pub fn smooth_transform(dnnf: &Dnnf) -> Result<Dnnf, DnnfError> {
    if !dnnf.is_decomposable() {
        return Err(DnnfError::NotDecomposable);
    }
    let all_vars = dnnf.var_set(dnnf.root()).count_ones(..) == dnnf.num_vars();
    if dnnf.is_smooth() && !dnnf.has_constants() && all_vars {
        return Ok(dnnf.clone());
    }

    let mut b = Builder {
        src: dnnf,
        table: NodeTable::default(),
        var_sets: Vec::new(),
        reserved: dnnf.nodes().iter().map(|n| n.id.as_str()).collect(),
        leaves: HashMap::new(),
        gadgets: HashMap::new(),
        wrappers: HashMap::new(),
    };
    let mut map: Vec<Mapped> = Vec::with_capacity(dnnf.len());
    for node in dnnf.nodes() {
        let m = match &node.kind {
            NodeKind::Leaf(dv) => Mapped::Node(b.leaf(*dv)),
            NodeKind::And(c) => {
                let mapped: Vec<Mapped> = c.iter().map(|&u| map[u]).collect();
                if mapped.contains(&Mapped::False) {
                    Mapped::False
                } else {
                    let kids: Vec<NodeIdx> = mapped
                        .into_iter()
                        .filter_map(|m| match m {
                            Mapped::Node(u) => Some(u),
                            _ => None,
                        })
                        .collect();
                    if kids.is_empty() {
                        Mapped::True
                    } else {
                        Mapped::Node(b.push(node.id.clone(), NodeKind::And(kids)))
                    }
                }
            }
            NodeKind::Or(c) => {
                let mapped: Vec<Mapped> = c.iter().map(|&u| map[u]).collect();
                let kids: Vec<NodeIdx> = mapped
                    .iter()
                    .filter_map(|m| match m {
                        Mapped::Node(u) => Some(*u),
                        _ => None,
                    })
                    .collect();
                let mut scope = FixedBitSet::with_capacity(dnnf.num_vars());
                for &u in &kids {
                    scope.union_with(&b.var_sets[u]);
                }
                if mapped.contains(&Mapped::True) {
                    // A true disjunct makes the node true on its scope; keep
                    // it as a gadget product so smoothness is preserved.
                    if scope.count_ones(..) == 0 {
                        Mapped::True
                    } else {
                        let vars: Vec<usize> = scope.ones().collect();
                        let first = b.gadget(vars[0]);
                        let g = b.wrap(first, vars[1..].to_vec());
                        Mapped::Node(b.push(node.id.clone(), NodeKind::Or(vec![g])))
                    }
                } else if kids.is_empty() {
                    Mapped::False
                } else {
                    let mut wrapped = Vec::with_capacity(kids.len());
                    for u in kids {
                        let mut missing = scope.clone();
                        missing.difference_with(&b.var_sets[u]);
                        let w = b.wrap(u, missing.ones().collect());
                        if !wrapped.contains(&w) {
                            wrapped.push(w);
                        }
                    }
                    Mapped::Node(b.push(node.id.clone(), NodeKind::Or(wrapped)))
                }
            }
        };
        map.push(m);
    }

    let root = match map[dnnf.root()] {
        Mapped::False => return Err(DnnfError::ConstantFalse),
        Mapped::True => {
            let gadgets: Vec<NodeIdx> = (0..dnnf.num_vars()).map(|v| b.gadget(v)).collect();
            b.push(dnnf.id(dnnf.root()).to_string(), NodeKind::And(gadgets))
        }
        Mapped::Node(r) => {
            let mut missing: FixedBitSet = (0..dnnf.num_vars()).collect();
            missing.grow(dnnf.num_vars());
            missing.difference_with(&b.var_sets[r]);
            b.wrap(r, missing.ones().collect())
        }
    };
    Dnnf::new(dnnf.domains().to_vec(), b.table.nodes, root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nnf::tests::fig1;
    use crate::nnf::{enumerate_models, parse_dnnf, validate};

    #[test]
    fn wraps_child_missing_a_variable() {
        let d = parse_dnnf(
            "domain x1 0 1\ndomain x2 0 1\nleaf p x1=0\nleaf q x1=1\nleaf r x2=0\nand a q r\nor o p a\nroot o\n",
        )
        .unwrap();
        let s = smooth_transform(&d).unwrap();
        assert!(validate(&s).is_valid(), "{}", validate(&s));
        assert_eq!(enumerate_models(&s).unwrap(), enumerate_models(&d).unwrap());
        let w = s.index_of("smooth_p_x2").unwrap();
        let kids: Vec<&str> = s.children(w).iter().map(|&c| s.id(c)).collect();
        assert_eq!(kids, vec!["p", "any_x2"]);
        let g = s.index_of("any_x2").unwrap();
        let leaves: Vec<String> = s
            .children(g)
            .iter()
            .map(|&c| match s.node(c).kind {
                NodeKind::Leaf(dv) => s.domain_var_name(dv),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(leaves, vec!["x2=0", "x2=1"]);
    }

    #[test]
    fn smooth_input_is_a_fixed_point() {
        let d = fig1();
        assert_eq!(smooth_transform(&d).unwrap(), d);
    }

    #[test]
    fn constants_are_folded() {
        let d = parse_dnnf(
            "domain x 0 1\ndomain y 0 1\nleaf p x=0\nleaf q y=1\nand t\nor f\nor o1 p f\nand a o1 t q\nroot a\n",
        )
        .unwrap();
        let s = smooth_transform(&d).unwrap();
        assert!(!s.has_constants());
        assert!(validate(&s).is_valid(), "{}", validate(&s));
        assert_eq!(enumerate_models(&s).unwrap(), enumerate_models(&d).unwrap());

        let d = parse_dnnf("domain x 0 1\nleaf p x=0\nor f\nand a p f\nroot a\n").unwrap();
        assert_eq!(smooth_transform(&d), Err(DnnfError::ConstantFalse));

        let d = parse_dnnf("domain x 0 1\nleaf p x=0\nand t\nor o p t\nroot o\n").unwrap();
        let s = smooth_transform(&d).unwrap();
        assert!(validate(&s).is_valid(), "{}", validate(&s));
        assert_eq!(enumerate_models(&s).unwrap(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn root_missing_variables_is_wrapped() {
        let d = parse_dnnf("domain x 0 1\ndomain y a b c\nleaf p x=1\nroot p\n").unwrap();
        let s = smooth_transform(&d).unwrap();
        assert!(validate(&s).is_valid(), "{}", validate(&s));
        assert_eq!(enumerate_models(&s).unwrap(), enumerate_models(&d).unwrap());
        assert_eq!(enumerate_models(&s).unwrap().len(), 3);
    }

    #[test]
    fn rejects_non_decomposable() {
        let d = parse_dnnf("domain x1 0 1\nleaf p x1=0\nleaf q x1=1\nand a p q\nroot a\n").unwrap();
        assert_eq!(smooth_transform(&d), Err(DnnfError::NotDecomposable));
    }
}
