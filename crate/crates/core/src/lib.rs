//! Exact canonical bases of `U_q^-` for symmetrizable Cartan data, and their foldings
//! along admissible diagram automorphisms.

pub mod cache;
pub mod canon;
pub mod cartan;
pub mod fold;
pub mod klr;
pub mod ring;
pub mod uqminus;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use ring::{Coeff, Fp, LaurentPoly, RationalFn, RingError, TruncatedSeries};

/// Laurent polynomials over `Z`.
pub type ZLaurent = LaurentPoly<BigInt>;
/// Laurent polynomials over `Q`.
pub type QLaurent = LaurentPoly<BigRational>;
/// Laurent polynomials over `F_2`.
pub type F2Laurent = LaurentPoly<Fp<2>>;
/// Laurent polynomials over `F_3`.
pub type F3Laurent = LaurentPoly<Fp<3>>;
/// Truncated series over `Z`.
pub type ZSeries = TruncatedSeries<BigInt>;
