//! Unit propagation, a semantic oracle, and sweeps that compare the two.

mod engine;
mod oracle;
mod verify;

pub use engine::{unit_propagate, Mark, Propagator, UpResult};
pub use oracle::{model_to_dimacs, model_value, Model, Oracle, DEFAULT_ORACLE_CAP};
pub use verify::{
    check_assignment, implication_violations, raw_sweep, scope_vars, verify_strength, Failure, Missed, Property, Scope,
    StrengthReport, Verdict, VerifyOptions, DEFAULT_BUDGET,
};
