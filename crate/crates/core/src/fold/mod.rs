//! Folding by an admissible diagram automorphism: the σ-fixed part of the canonical basis,
//! its reduction modulo ℓ, and the comparison with the folded datum.

mod context;
mod quotient;
mod verify;

use thiserror::Error;

use crate::canon::CanonError;

pub use context::{FoldContext, StableData};
pub use quotient::{
    fold_reduce, g_monomial, lift, lift_expr, lift_monomial, orbit_sum, orbit_sum_free,
    stable_basis, tilde_f_apply, QuotientElement,
};
pub use verify::{
    dual_compat_check, fold_report, folded_structure_check, phi_check, serre_check, sign_table,
    CompatEntry, FoldReport, PhiEntry, SerreEntry, SignEntry,
};

#[derive(Debug, Error)]
pub enum FoldError {
    #[error("sigma has order {order}, which is not a power of {ell}")]
    NotPrimePower { order: u32, ell: u64 },
    #[error("{0} is not a supported prime (expected 2, 3, 5 or 7)")]
    UnsupportedPrime(u64),
    #[error("weight {0} is not sigma-stable")]
    NotStable(String),
    #[error("weight {0} is outside the computed range")]
    OutOfRange(String),
    #[error("input at weight {0} is not sigma-invariant modulo ell")]
    NotInvariant(String),
    #[error("sigma does not permute the canonical basis at weight {0}")]
    NotPermuted(String),
    #[error(transparent)]
    Canon(#[from] CanonError),
}
