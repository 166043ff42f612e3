//! Compiles smooth DNNFs over finite-domain variables into CNF encodings
//! that are unit refutation complete or propagation complete, and checks
//! such strength claims exhaustively on small instances.
//!
//! The pipeline is [`nnf::parse_dnnf`] → [`nnf::smooth_transform`] →
//! [`separator::build_cover`] → [`encoder::compile`] →
//! [`propagation::verify_strength`].

pub mod cardinality;
pub mod cnf;
pub mod encoder;
pub mod error;
pub mod fixtures;
pub mod nnf;
pub mod pipeline;
pub mod propagation;
pub mod separator;
