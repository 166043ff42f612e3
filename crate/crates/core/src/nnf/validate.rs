use std::fmt;

use super::{Dnnf, NodeKind};

/// A violated structural property together with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Two children of an and-node share `var`.
    NotDecomposable {
        node: String,
        children: (String, String),
        var: String,
    },
    /// A child of an or-node does not mention the same variables as the node.
    NotSmooth {
        node: String,
        child: String,
        missing: Vec<String>,
    },
    /// An inner node with no children (a constant).
    Constant { node: String },
    /// An input variable without any leaf, so `var(root)` misses it.
    UnusedVariable { var: String },
    /// A node the root cannot reach.
    Unreachable { node: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotDecomposable {
                node,
                children: (a, b),
                var,
            } => write!(
                f,
                "decomposability: and-node `{node}` has children `{a}` and `{b}` sharing `{var}`"
            ),
            Violation::NotSmooth { node, child, missing } => write!(
                f,
                "smoothness: or-node `{node}` has child `{child}` missing {{{}}}",
                missing.join(", ")
            ),
            Violation::Constant { node } => {
                write!(f, "constant-freeness: node `{node}` has no children")
            }
            Violation::UnusedVariable { var } => {
                write!(f, "coverage: variable `{var}` has no leaf")
            }
            Violation::Unreachable { node } => {
                write!(f, "reachability: node `{node}` is not reachable from the root")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_decomposable(&self) -> bool {
        !self
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NotDecomposable { .. }))
    }

    pub fn is_smooth(&self) -> bool {
        !self.violations.iter().any(|v| matches!(v, Violation::NotSmooth { .. }))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "ok: decomposable, smooth, constant-free");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks decomposability, smoothness, constant-freeness, variable coverage
/// and reachability, listing every violation.
pub fn validate(dnnf: &Dnnf) -> ValidationReport {
    let mut violations = Vec::new();
    for (v, node) in dnnf.nodes().iter().enumerate() {
        match &node.kind {
            NodeKind::Leaf(_) => {}
            NodeKind::And(children) if children.is_empty() => {
                violations.push(Violation::Constant { node: node.id.clone() });
            }
            NodeKind::Or(children) if children.is_empty() => {
                violations.push(Violation::Constant { node: node.id.clone() });
            }
            NodeKind::And(children) => {
                for (i, &a) in children.iter().enumerate() {
                    for &b in &children[i + 1..] {
                        let mut common = dnnf.var_set(a).clone();
                        common.intersect_with(dnnf.var_set(b));
                        if let Some(var) = common.ones().next() {
                            violations.push(Violation::NotDecomposable {
                                node: node.id.clone(),
                                children: (dnnf.id(a).to_string(), dnnf.id(b).to_string()),
                                var: dnnf.domains()[var].name.clone(),
                            });
                        }
                    }
                }
            }
            NodeKind::Or(children) => {
                for &c in children {
                    if dnnf.var_set(c) != dnnf.var_set(v) {
                        let missing = dnnf
                            .var_set(v)
                            .difference(dnnf.var_set(c))
                            .map(|i| dnnf.domains()[i].name.clone())
                            .collect();
                        violations.push(Violation::NotSmooth {
                            node: node.id.clone(),
                            child: dnnf.id(c).to_string(),
                            missing,
                        });
                    }
                }
            }
        }
    }
    for (i, d) in dnnf.domains().iter().enumerate() {
        if !dnnf.var_set(dnnf.root()).contains(i) {
            violations.push(Violation::UnusedVariable { var: d.name.clone() });
        }
    }
    for (v, reached) in dnnf.reachable().into_iter().enumerate() {
        if !reached {
            violations.push(Violation::Unreachable {
                node: dnnf.id(v).to_string(),
            });
        }
    }
    ValidationReport { violations }
}
