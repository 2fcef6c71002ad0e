//! The negative half `U_q^-`: words, the free model, the form, and integral coordinates.

mod engine;
mod epsilon;
mod free;
mod linalg;
mod monomial;
mod word;

pub use engine::{Algebra, Element, FormValue, ScaledWords};
pub use epsilon::{epsilon, epsilon_rank, i_string};
pub use free::{pair, pair_tensor, pair_words, serre_element, FreeElement, TensorElement};
pub use linalg::{
    expand_in_basis, gram_matrix, laurent_det, laurent_rank, pair_free, solve_rational, Echelon,
    GramMatrix,
};
pub use monomial::{enumerate_monomials, weight_factorial, Monomial, MonomialExpr};
pub use word::{Word, WordSpace};

use crate::cartan::{CartanDatum, Weight};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UqError {
    #[error("element does not have integral coordinates")]
    NotIntegral,
    #[error("element is not in the span of the selected monomials")]
    NotInSpan,
    #[error("selected Gram matrix is singular")]
    SingularGram,
    #[error("weights differ")]
    WeightMismatch,
}

/// Divided-power monomials of weight `b` as free elements, in monomial order.
pub fn divided_power_monomials(datum: &CartanDatum, b: &Weight) -> Vec<FreeElement> {
    enumerate_monomials(b)
        .iter()
        .map(|m| FreeElement::from_monomial(datum, m))
        .collect()
}
