//! Reader for the line-oriented DNNF text format.
//!
//! ```text
//! # comment
//! domain x1 0 1
//! leaf l0 x1=0
//! leaf l1 x1=1
//! or r l0 l1
//! root r
//! ```
//!
//! Children must be declared before they are used and `root` must be the
//! last statement. `;` may be used in place of a line break. A variable used
//! in a leaf without a `domain` line gets an implicit domain made of the
//! values its leaves mention, in order of appearance.

use std::collections::{HashMap, HashSet};
use std::fmt;

use super::{Dnnf, Domain, DomainVar, Node, NodeIdx, NodeKind};
use crate::error::{ParseError, ParseErrorKind};

/// Non-fatal findings reported while parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseWarning {
    /// A second leaf with an already-used label was merged into the first.
    MergedLeaf {
        line: usize,
        id: String,
        merged_into: String,
    },
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::MergedLeaf { line, id, merged_into } => write!(
                f,
                "line {line}: leaf `{id}` repeats the label of `{merged_into}` and was merged into it"
            ),
        }
    }
}

pub fn parse_dnnf(text: &str) -> Result<Dnnf, ParseError> {
    parse_dnnf_with_warnings(text).map(|(d, _)| d)
}

struct Stmt<'a> {
    line: usize,
    toks: Vec<&'a str>,
}

fn is_ident(tok: &str) -> bool {
    !tok.is_empty() && tok.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

pub fn parse_dnnf_with_warnings(text: &str) -> Result<(Dnnf, Vec<ParseWarning>), ParseError> {
    let mut stmts = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        for part in line.split(';') {
            let toks: Vec<&str> = part.split_whitespace().collect();
            if !toks.is_empty() {
                stmts.push(Stmt { line: i + 1, toks });
            }
        }
    }
    let last_line = text.lines().count().max(1);

    // Declarations of inner nodes, for telling forward references from cycles.
    let mut decl_children: HashMap<&str, Vec<&str>> = HashMap::new();
    for s in &stmts {
        if matches!(s.toks[0], "and" | "or") && s.toks.len() >= 2 {
            decl_children.entry(s.toks[1]).or_insert_with(|| s.toks[2..].to_vec());
        }
    }

    let mut domains: Vec<Domain> = Vec::new();
    let mut implicit: HashSet<usize> = HashSet::new();
    let mut nodes: Vec<Node> = Vec::new();
    let mut ids: HashMap<String, NodeIdx> = HashMap::new();
    let mut leaf_of: HashMap<DomainVar, NodeIdx> = HashMap::new();
    let mut aliases: Vec<(String, NodeIdx)> = Vec::new();
    let mut warnings = Vec::new();
    let mut root: Option<NodeIdx> = None;

    for (k, s) in stmts.iter().enumerate() {
        let line = s.line;
        if root.is_some() {
            return Err(err(line, ParseErrorKind::MisplacedRoot));
        }
        let syntax = |m: String| err(line, ParseErrorKind::Syntax(m));
        match s.toks[0] {
            "domain" => {
                let [_, name, values @ ..] = s.toks.as_slice() else {
                    return Err(syntax("expected `domain <var> <value> ...`".into()));
                };
                if !is_ident(name) {
                    return Err(syntax(format!("bad variable name `{name}`")));
                }
                if values.is_empty() {
                    return Err(syntax(format!("domain of `{name}` is empty")));
                }
                if domains.iter().any(|d| d.name == *name) {
                    return Err(err(
                        line,
                        ParseErrorKind::DomainMismatch(format!("variable `{name}` declared twice or after use")),
                    ));
                }
                let mut seen = HashSet::new();
                for v in values {
                    if v.contains('=') {
                        return Err(syntax(format!("bad value token `{v}`")));
                    }
                    if !seen.insert(*v) {
                        return Err(err(
                            line,
                            ParseErrorKind::DomainMismatch(format!("value `{v}` repeated in domain of `{name}`")),
                        ));
                    }
                }
                domains.push(Domain {
                    name: name.to_string(),
                    values: values.iter().map(|v| v.to_string()).collect(),
                });
            }
            "leaf" => {
                let [_, id, label] = s.toks.as_slice() else {
                    return Err(syntax("expected `leaf <id> <var>=<value>`".into()));
                };
                check_new_id(id, &ids, line)?;
                let Some((var, value)) = label.split_once('=') else {
                    return Err(syntax(format!("bad leaf label `{label}`")));
                };
                if !is_ident(var) || value.is_empty() {
                    return Err(syntax(format!("bad leaf label `{label}`")));
                }
                let var_idx = match domains.iter().position(|d| d.name == var) {
                    Some(i) => i,
                    None => {
                        domains.push(Domain {
                            name: var.to_string(),
                            values: Vec::new(),
                        });
                        implicit.insert(domains.len() - 1);
                        domains.len() - 1
                    }
                };
                let value_idx = match domains[var_idx].value_index(value) {
                    Some(i) => i,
                    None if implicit.contains(&var_idx) => {
                        domains[var_idx].values.push(value.to_string());
                        domains[var_idx].values.len() - 1
                    }
                    None => {
                        return Err(err(
                            line,
                            ParseErrorKind::DomainMismatch(format!("`{value}` is not in the domain of `{var}`")),
                        ))
                    }
                };
                let dv = DomainVar {
                    var: var_idx,
                    value: value_idx,
                };
                if let Some(&existing) = leaf_of.get(&dv) {
                    warnings.push(ParseWarning::MergedLeaf {
                        line,
                        id: id.to_string(),
                        merged_into: nodes[existing].id.clone(),
                    });
                    ids.insert(id.to_string(), existing);
                    aliases.push((id.to_string(), existing));
                    continue;
                }
                let idx = nodes.len();
                nodes.push(Node {
                    id: id.to_string(),
                    kind: NodeKind::Leaf(dv),
                });
                ids.insert(id.to_string(), idx);
                leaf_of.insert(dv, idx);
            }
            op @ ("and" | "or") => {
                let [_, id, children @ ..] = s.toks.as_slice() else {
                    return Err(syntax(format!("expected `{op} <id> <child> ...`")));
                };
                check_new_id(id, &ids, line)?;
                let mut kids = Vec::with_capacity(children.len());
                for child in children {
                    let Some(&c) = ids.get(*child) else {
                        if reaches(&decl_children, child, id) {
                            return Err(err(line, ParseErrorKind::Cyclic(child.to_string())));
                        }
                        return Err(err(line, ParseErrorKind::UndeclaredChild(child.to_string())));
                    };
                    if kids.contains(&c) {
                        return Err(syntax(format!("child `{child}` listed twice")));
                    }
                    kids.push(c);
                }
                let idx = nodes.len();
                let kind = if op == "and" {
                    NodeKind::And(kids)
                } else {
                    NodeKind::Or(kids)
                };
                nodes.push(Node {
                    id: id.to_string(),
                    kind,
                });
                ids.insert(id.to_string(), idx);
            }
            "root" => {
                let [_, id] = s.toks.as_slice() else {
                    return Err(syntax("expected `root <id>`".into()));
                };
                if k + 1 != stmts.len() {
                    return Err(err(line, ParseErrorKind::MisplacedRoot));
                }
                let Some(&r) = ids.get(*id) else {
                    return Err(err(line, ParseErrorKind::UnknownRoot(id.to_string())));
                };
                root = Some(r);
            }
            other => return Err(syntax(format!("unknown statement `{other}`"))),
        }
    }
    let root = root.ok_or_else(|| err(last_line, ParseErrorKind::MissingRoot))?;
    let dnnf = Dnnf::with_aliases(domains, nodes, root, aliases)
        .map_err(|e| err(last_line, ParseErrorKind::Syntax(e.to_string())))?;
    Ok((dnnf, warnings))
}

fn check_new_id(id: &str, ids: &HashMap<String, NodeIdx>, line: usize) -> Result<(), ParseError> {
    if !is_ident(id) {
        return Err(err(line, ParseErrorKind::Syntax(format!("bad node id `{id}`"))));
    }
    if ids.contains_key(id) {
        return Err(err(line, ParseErrorKind::DuplicateId(id.to_string())));
    }
    Ok(())
}

/// Whether `target` is reachable from `from` in the declared child relation.
fn reaches(decl: &HashMap<&str, Vec<&str>>, from: &str, target: &str) -> bool {
    let mut stack = vec![from];
    let mut seen = HashSet::new();
    while let Some(v) = stack.pop() {
        if v == target {
            return true;
        }
        if seen.insert(v) {
            if let Some(children) = decl.get(v) {
                stack.extend(children.iter().copied());
            }
        }
    }
    false
}
