//! Literals, clause sets, variable maps and DIMACS I/O.

use std::fmt;
use std::io::{self, Write};
use std::ops::Not;

use serde::{Deserialize, Serialize};

use crate::error::DimacsError;

/// A propositional variable, numbered from 1 as in DIMACS.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn from_index(idx: usize) -> Var {
        Var(idx as u32 + 1)
    }

    pub fn pos(self) -> Lit {
        Lit::new(self, true)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Lit {
        Lit::new(self, false)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A literal in DIMACS convention: `v` or `-v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Lit(i32);

impl Lit {
    pub fn new(var: Var, positive: bool) -> Lit {
        assert!(var.0 >= 1, "variable ids start at 1");
        let v = var.0 as i32;
        Lit(if positive { v } else { -v })
    }

    pub fn from_dimacs(value: i32) -> Option<Lit> {
        (value != 0).then_some(Lit(value))
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }

    pub fn var(self) -> Var {
        Var(self.0.unsigned_abs())
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// Dense index: `2 * (var - 1) + (negative as usize)`.
    pub fn code(self) -> usize {
        2 * self.var().index() + usize::from(self.0 < 0)
    }
}

impl Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(-self.0)
    }
}

impl PartialOrd for Lit {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by variable, positive before negative.
impl Ord for Lit {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.var(), !self.is_positive()).cmp(&(other.var(), !other.is_positive()))
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type Clause = Vec<Lit>;

/// A plain clause list over variables `1..=num_vars`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: u32,
    pub clauses: Vec<Clause>,
}

impl Cnf {
    pub fn new(num_vars: u32) -> Cnf {
        Cnf {
            num_vars,
            clauses: Vec::new(),
        }
    }

    pub fn add(&mut self, clause: Clause) {
        for lit in &clause {
            self.num_vars = self.num_vars.max(lit.var().0);
        }
        self.clauses.push(clause);
    }

    pub fn extend<I: IntoIterator<Item = Clause>>(&mut self, clauses: I) {
        for c in clauses {
            self.add(c);
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (1..=self.num_vars).map(Var)
    }

    /// Evaluates the formula under a total assignment indexed by `Var::index`.
    pub fn satisfied_by(&self, model: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| model[l.var().index()] == l.is_positive()))
    }
}

/// What a CNF variable stands for.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VarLabel {
    /// The domain variable `<var=value>`; for boolean inputs `value` is `1`.
    Dom { var: String, value: String },
    /// A DNNF node (inner or no-op node).
    Node { id: String },
    /// An auxiliary variable introduced by a cardinality encoding.
    Aux { name: String },
}

impl VarLabel {
    pub fn is_input(&self) -> bool {
        matches!(self, VarLabel::Dom { .. })
    }
}

impl fmt::Display for VarLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarLabel::Dom { var, value } => write!(f, "dom {var}={value}"),
            VarLabel::Node { id } => write!(f, "node {id}"),
            VarLabel::Aux { name } => write!(f, "aux {name}"),
        }
    }
}

/// Labels for variables `1..=len`. Unlabelled variables are allowed when a
/// document is read without map comments.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarMap {
    labels: Vec<Option<VarLabel>>,
}

impl VarMap {
    pub fn new() -> VarMap {
        VarMap::default()
    }

    /// Appends a label and returns the variable it was given.
    pub fn push(&mut self, label: VarLabel) -> Var {
        self.labels.push(Some(label));
        Var(self.labels.len() as u32)
    }

    pub fn set(&mut self, var: Var, label: VarLabel) {
        if self.labels.len() < var.0 as usize {
            self.labels.resize(var.0 as usize, None);
        }
        self.labels[var.index()] = Some(label);
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, var: Var) -> Option<&VarLabel> {
        self.labels.get(var.index()).and_then(Option::as_ref)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &VarLabel)> {
        self.labels
            .iter()
            .enumerate()
            .filter_map(|(i, l)| l.as_ref().map(|l| (Var::from_index(i), l)))
    }

    pub fn find(&self, label: &VarLabel) -> Option<Var> {
        self.iter().find(|(_, l)| *l == label).map(|(v, _)| v)
    }

    pub fn node_var(&self, id: &str) -> Option<Var> {
        self.find(&VarLabel::Node { id: id.to_string() })
    }

    pub fn dom_var(&self, var: &str, value: &str) -> Option<Var> {
        self.find(&VarLabel::Dom {
            var: var.to_string(),
            value: value.to_string(),
        })
    }

    pub fn aux_var(&self, name: &str) -> Option<Var> {
        self.find(&VarLabel::Aux { name: name.to_string() })
    }

    /// Variables labelled as domain (input) variables, ascending.
    pub fn input_vars(&self) -> Vec<Var> {
        self.iter().filter(|(_, l)| l.is_input()).map(|(v, _)| v).collect()
    }

    /// Human-readable name of a literal, falling back to its number.
    pub fn describe(&self, lit: Lit) -> String {
        let name = match self.label(lit.var()) {
            Some(VarLabel::Dom { var, value }) => format!("<{var}={value}>"),
            Some(VarLabel::Node { id }) => id.clone(),
            Some(VarLabel::Aux { name }) => name.clone(),
            None => lit.var().to_string(),
        };
        if lit.is_positive() {
            name
        } else {
            format!("-{name}")
        }
    }
}

/// Writes a DIMACS CNF document. Map comments come first, one per labelled
/// variable in id order, followed by the problem line and the clauses.
pub fn write_dimacs<W: Write>(map: &VarMap, cnf: &Cnf, sink: &mut W) -> io::Result<()> {
    for (var, label) in map.iter() {
        writeln!(sink, "c map {label} {var}")?;
    }
    writeln!(sink, "p cnf {} {}", cnf.num_vars, cnf.clauses.len())?;
    let mut line = String::new();
    for clause in &cnf.clauses {
        line.clear();
        for lit in clause {
            line.push_str(&lit.to_string());
            line.push(' ');
        }
        line.push('0');
        writeln!(sink, "{line}")?;
    }
    Ok(())
}

pub fn dimacs_string(map: &VarMap, cnf: &Cnf) -> String {
    let mut buf = Vec::new();
    write_dimacs(map, cnf, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("DIMACS output is ASCII")
}

/// A parsed DIMACS document together with any `c map` labels it carried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimacsDocument {
    pub cnf: Cnf,
    pub map: VarMap,
}

/// Reads DIMACS CNF. Clauses may span lines; `c map ...` comments are parsed
/// into a [`VarMap`], other comments are skipped.
pub fn read_dimacs(text: &str) -> Result<DimacsDocument, DimacsError> {
    let mut map = VarMap::new();
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Clause = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            if !(rest.is_empty() || rest.starts_with(char::is_whitespace)) {
                return Err(DimacsError::Syntax {
                    line: line_no,
                    message: format!("unexpected token `{line}`"),
                });
            }
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.first() == Some(&"map") {
                let (var, label) = parse_map_line(&toks[1..]).ok_or_else(|| DimacsError::Syntax {
                    line: line_no,
                    message: format!("malformed map comment `{line}`"),
                })?;
                map.set(var, label);
            }
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(DimacsError::Syntax {
                    line: line_no,
                    message: "duplicate problem line".into(),
                });
            }
            let toks: Vec<&str> = rest.split_whitespace().collect();
            match toks.as_slice() {
                ["cnf", v, c] => {
                    let v = v.parse().map_err(|_| DimacsError::Syntax {
                        line: line_no,
                        message: format!("bad variable count `{v}`"),
                    })?;
                    let c = c.parse().map_err(|_| DimacsError::Syntax {
                        line: line_no,
                        message: format!("bad clause count `{c}`"),
                    })?;
                    header = Some((v, c));
                }
                _ => {
                    return Err(DimacsError::Syntax {
                        line: line_no,
                        message: format!("bad problem line `{line}`"),
                    })
                }
            }
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(DimacsError::MissingHeader);
        };
        for tok in line.split_whitespace() {
            let value: i32 = tok.parse().map_err(|_| DimacsError::Syntax {
                line: line_no,
                message: format!("bad literal `{tok}`"),
            })?;
            match Lit::from_dimacs(value) {
                None => clauses.push(std::mem::take(&mut current)),
                Some(lit) => {
                    if lit.var().0 > num_vars {
                        return Err(DimacsError::VariableOutOfRange {
                            line: line_no,
                            var: lit.var().0,
                            num_vars,
                        });
                    }
                    current.push(lit);
                }
            }
        }
    }
    let (num_vars, num_clauses) = header.ok_or(DimacsError::MissingHeader)?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != num_clauses {
        return Err(DimacsError::ClauseCount {
            declared: num_clauses,
            found: clauses.len(),
        });
    }
    if map.len() > num_vars as usize {
        return Err(DimacsError::VariableOutOfRange {
            line: 0,
            var: map.len() as u32,
            num_vars,
        });
    }
    Ok(DimacsDocument {
        cnf: Cnf { num_vars, clauses },
        map,
    })
}

fn parse_map_line(toks: &[&str]) -> Option<(Var, VarLabel)> {
    let [kind, name, id] = toks else {
        return None;
    };
    let var: u32 = id.parse().ok().filter(|&v| v >= 1)?;
    let label = match *kind {
        "dom" => {
            let (var, value) = name.split_once('=')?;
            VarLabel::Dom {
                var: var.to_string(),
                value: value.to_string(),
            }
        }
        "node" => VarLabel::Node { id: name.to_string() },
        "aux" => VarLabel::Aux { name: name.to_string() },
        _ => return None,
    };
    Some((Var(var), label))
}
