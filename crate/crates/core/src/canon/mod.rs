//! Canonical basis of the negative half, built weight by weight and independently certified.

mod certify;
mod construct;
mod dual;
mod family;
mod record;
mod structure;

use thiserror::Error;

use crate::ring::RingError;

pub use certify::{certify_basis, CertFailure, Certification, CertifyConfig};
pub use construct::{canonical_basis, unit_record, BuildConfig};
pub use dual::{
    AxiomFailure, CrystalEdge, DualActions, DualBasisRecord, EpsilonDualityReport, UpperAxiomReport,
};
pub use family::BasisFamily;
pub use record::{BasisElement, BasisRecord, Provenance, MAX_EXPANSION_ORDER};
pub use structure::{
    sigma_permutation, structure_constants, structure_sweep, StructureConstants, StructureSweep,
};

#[derive(Debug, Error)]
pub enum CanonError {
    #[error("weight mismatch")]
    WeightMismatch,
    #[error("no Laurent expansion at weight {weight} up to order {order}")]
    NoLaurentExpansion { weight: String, order: i32 },
    #[error("gram matrix is not almost orthonormal")]
    NotAlmostOrthonormal,
    #[error("lower weight {0} missing")]
    MissingLower(String),
    #[error(
        "correction at weight {weight} (node {node}, n={n}) did not settle after {passes} passes"
    )]
    Diverged {
        weight: String,
        node: usize,
        n: u32,
        passes: u32,
    },
    #[error("candidate at weight {weight} (node {node}, n={n}, parent {parent}) has norm outside 1+qZ[[q]]")]
    CandidateNotNormalized {
        weight: String,
        node: usize,
        n: u32,
        parent: usize,
    },
    #[error("cache: {0}")]
    Io(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}
