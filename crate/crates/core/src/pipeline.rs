//! The stages glued together: smooth if needed, level, subdivide and cover,
//! then compile and pick the property each kind is meant to have.

use crate::cnf::Cnf;
use crate::encoder::{compile, CnfEncoding, EncodingKind};
use crate::error::{CoverError, DnnfError, EncodeError};
use crate::nnf::{smooth_transform, validate, Dnnf};
use crate::propagation::Property;
use crate::separator::{build_cover, compute_levels, CoverResult, LevelAssignment, LevelMode};

/// A DNNF ready for compilation.
#[derive(Clone, Debug)]
pub struct Prepared {
    /// The smooth DNNF the cover was built for (before subdivision).
    pub smooth: Dnnf,
    /// Whether [`smooth_transform`] had to change the input.
    pub smoothed: bool,
    pub levels: LevelAssignment,
    /// The subdivided DNNF and its separator cover.
    pub cover: CoverResult,
}

#[derive(Debug, thiserror::Error)]
pub enum PrepareError {
    #[error(transparent)]
    Dnnf(#[from] DnnfError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

/// Smooths `dnnf` when it is not smooth yet, then levels and covers it.
pub fn prepare(dnnf: &Dnnf, mode: LevelMode) -> Result<Prepared, PrepareError> {
    let report = validate(dnnf);
    let (smooth, smoothed) = if report.is_smooth() && report.is_valid() {
        (dnnf.clone(), false)
    } else {
        let s = smooth_transform(dnnf)?;
        let changed = s != *dnnf;
        (s, changed)
    };
    let levels = compute_levels(&smooth, mode)?;
    let cover = build_cover(&smooth, &levels)?;
    Ok(Prepared {
        smooth,
        smoothed,
        levels,
        cover,
    })
}

impl Prepared {
    pub fn encode(&self, kind: EncodingKind) -> Result<CnfEncoding, EncodeError> {
        compile(&self.cover.dnnf, Some(&self.cover.cover), kind)
    }
}

/// The strongest property each kind is built to have: domain consistency
/// for FullNNF, URC for ψ_c and ψ_c′, PC for ψ_p and ψ_p′.
pub fn claimed_property(kind: EncodingKind) -> Property {
    if kind.is_pc() {
        Property::Pc
    } else if kind.is_urc() {
        Property::Urc
    } else {
        Property::DomainConsistency
    }
}

/// The formula a strength claim refers to. FullNNF on non-boolean domains
/// does not exclude assignments with two values of a variable, so its
/// domain-consistency claim is checked together with the direct-encoding
/// constraints; every other encoding is checked as it stands.
pub fn claim_formula(enc: &CnfEncoding) -> Cnf {
    if enc.kind == EncodingKind::Full {
        enc.to_cnf_with_direct_encoding()
    } else {
        enc.to_cnf()
    }
}
