//! Scalar rings: coefficient fields, Laurent polynomials, rational functions, truncated series.

pub mod coeff;
pub mod laurent;
pub mod poly;
pub mod quantum;
pub mod rational;
pub mod series;

pub use coeff::{is_prime, prime_power, Coeff, Fp};
pub use laurent::LaurentPoly;
pub use quantum::{gaussian_binomial, quantum_factorial, quantum_int};
pub use rational::RationalFn;
pub use series::{series_expand, symmetric_round, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("exact division has a nonzero remainder")]
    NotDivisible,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("factorial of negative integer {0}")]
    NegativeFactorial(i64),
    #[error("coefficient of q^{exponent} requested beyond precision O(q^{order})")]
    BeyondPrecision { exponent: i32, order: i32 },
    #[error("leading coefficient is not a unit")]
    NonUnitLeadingCoefficient,
    #[error(
        "series known only below q^{order} cannot be rounded (negative support reaches q^-{reach})"
    )]
    RoundingWindow { reach: i32, order: i32 },
}
