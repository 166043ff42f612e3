use thiserror::Error;

/// A DNNF source document could not be parsed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("undeclared child `{0}`")]
    UndeclaredChild(String),
    #[error("cyclic reference through `{0}`")]
    Cyclic(String),
    #[error("duplicate node id `{0}`")]
    DuplicateId(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("missing root declaration")]
    MissingRoot,
    #[error("`root` must appear exactly once, as the last declaration")]
    MisplacedRoot,
    #[error("unknown root `{0}`")]
    UnknownRoot(String),
}

/// Errors raised by operations on an already-built DNNF.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DnnfError {
    #[error("invalid DNNF structure: {0}")]
    Structure(String),
    #[error("assignment has {found} values but the DNNF has {expected} variables")]
    AssignmentLength { expected: usize, found: usize },
    #[error("value index {value} out of range for variable `{var}`")]
    AssignmentValue { var: String, value: usize },
    #[error("assignment does not satisfy the DNNF")]
    NotSatisfying,
    #[error("DNNF is not smooth")]
    NotSmooth,
    #[error("DNNF is not decomposable")]
    NotDecomposable,
    #[error("DNNF simplifies to the constant false function")]
    ConstantFalse,
    #[error("enumeration would visit {size} assignments, above the cap of {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("infeasible generator parameters: {0}")]
    Infeasible(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("strict levels requested but node `{0}` is reached by paths of different lengths")]
    NotStrictlyLeveled(String),
    #[error("level function violates the edge condition on ({0}, {1})")]
    BadLevels(String, String),
    #[error("level function does not match the DNNF ({0})")]
    LevelMismatch(String),
    #[error("more than {cap} root-to-leaf paths for variable `{var}`")]
    PathCapExceeded { var: String, cap: usize },
    #[error("unknown node `{0}` in cover")]
    UnknownNode(String),
    #[error("cover does not match the DNNF: {0}")]
    Mismatch(String),
    #[error("malformed cover document: {0}")]
    Json(String),
    #[error(transparent)]
    Dnnf(#[from] DnnfError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CardinalityError {
    #[error("at-most-one ladder needs at least 2 inputs, got {0}")]
    TooFewInputs(usize),
    #[error("bound k={k} out of range for n={n}")]
    BoundOutOfRange { n: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("DNNF is not smooth; smooth it first")]
    NotSmooth,
    #[error("DNNF is not decomposable")]
    NotDecomposable,
    #[error("DNNF contains a constant node `{0}`")]
    Constant(String),
    #[error("DNNF cannot be encoded: {0}")]
    Invalid(String),
    #[error("encoding kind `{0}` needs a separator cover")]
    MissingCover(String),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("cover does not match the DNNF: {0}")]
    CoverMismatch(String),
    #[error("variable `{0}` does not have a boolean domain")]
    NonBoolean(String),
    #[error("encoding is already booleanized")]
    AlreadyBoolean,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("missing `p cnf` problem line")]
    MissingHeader,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: variable {var} exceeds declared count {num_vars}")]
    VariableOutOfRange { line: usize, var: u32, num_vars: u32 },
    #[error("declared {declared} clauses, found {found}")]
    ClauseCount { declared: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("literal {0} refers to a variable outside the formula")]
    UnknownVariable(i32),
    #[error("assumptions contain the complementary pair {0}/-{0}")]
    Complementary(u32),
    #[error("formula has {vars} variables, above the oracle cap of {cap}")]
    OracleCap { vars: usize, cap: usize },
    #[error("sweep budget of {budget} partial assignments exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("scope `inputs` needs domain-variable map comments")]
    NoInputs,
}
