//! KLR parameters, grading, and the explicit orbit modules `L_j` with relation checks.

mod grading;
mod model;
mod params;
mod report;

use thiserror::Error;

pub use grading::{degree, graded_dim_r_alpha_j, word_degree, GradedDim};
pub use model::{
    build_lj, mat_mul, psi, relations, verify_relations, Expr, Gen, LjModel, Mat, Relation,
    RelationFailure, RelationReport, MAX_ORBIT,
};
pub use params::{
    apply_overrides, default_params, sigma_on_generators, swap_vars, BiPoly, KLRParams, SigmaReport,
};
pub use report::{klr_check, GradedEntry, KlrReport};

#[derive(Debug, Error)]
pub enum KlrError {
    #[error("parameter axiom violated: {0}")]
    Axiom(String),
    #[error("invalid parameter override: {0}")]
    Override(String),
    #[error("orbit size {0} outside 1..=5")]
    OrbitSize(usize),
    #[error("letters are not a sigma-orbit")]
    NotAnOrbit,
    #[error("generator index out of range")]
    OutOfRange,
    #[error("sequence is not an arrangement of the orbit")]
    WrongWeight,
}
