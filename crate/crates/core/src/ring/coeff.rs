//! Coefficient rings for Laurent polynomials: Z, Q and F_p.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A commutative coefficient ring usable inside [`LaurentPoly`](super::LaurentPoly).
pub trait Coeff: Clone + Eq + Hash + fmt::Debug + Zero + One + Send + Sync + 'static {
    /// Characteristic of the ring (0 for Z and Q).
    fn characteristic() -> u64;

    fn from_i64(v: i64) -> Self;

    fn add_ref(&self, other: &Self) -> Self;

    fn sub_ref(&self, other: &Self) -> Self;

    fn mul_ref(&self, other: &Self) -> Self;

    fn neg_ref(&self) -> Self;

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.add_ref(&a.mul_ref(b));
    }

    /// Exact division; `None` when `other` does not divide `self`.
    fn div_exact(&self, other: &Self) -> Option<Self>;

    /// Decimal rendering used by the JSON serializers.
    fn to_decimal(&self) -> String;

    fn parse_decimal(s: &str) -> Option<Self>;

    /// Whether the coefficient is a unit of the ring.
    fn is_unit(&self) -> bool;

    /// Sign for ordered rings; F_p reports `0` or `1`.
    fn signum_i8(&self) -> i8;
}

impl Coeff for BigInt {
    fn characteristic() -> u64 {
        0
    }

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }

    fn to_decimal(&self) -> String {
        self.to_string()
    }

    fn parse_decimal(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }

    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }

    fn signum_i8(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

impl Coeff for BigRational {
    fn characteristic() -> u64 {
        0
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| self / other)
    }

    fn to_decimal(&self) -> String {
        self.to_string()
    }

    fn parse_decimal(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(BigRational::new(n.trim().parse().ok()?, d))
            }
            None => Some(BigRational::from_integer(s.parse().ok()?)),
        }
    }

    fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    fn signum_i8(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

/// The prime field Z/PZ. `P` must be prime; see [`is_prime`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("residue fits in u64"))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::<P>(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(P - 2))
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> std::ops::Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<const P: u64> std::ops::Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Coeff for Fp<P> {
    fn characteristic() -> u64 {
        P
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }

    fn add_ref(&self, other: &Self) -> Self {
        Fp(((self.0 as u128 + other.0 as u128) % P as u128) as u64)
    }

    fn sub_ref(&self, other: &Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - other.0 as u128) % P as u128) as u64)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        Fp(((self.0 as u128 * other.0 as u128) % P as u128) as u64)
    }

    fn neg_ref(&self) -> Self {
        Fp((P - self.0) % P)
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self.mul_ref(&inv))
    }

    fn to_decimal(&self) -> String {
        self.0.to_string()
    }

    fn parse_decimal(s: &str) -> Option<Self> {
        let v: BigInt = s.trim().parse().ok()?;
        Some(Fp::from_bigint(&v))
    }

    fn is_unit(&self) -> bool {
        self.0 != 0
    }

    fn signum_i8(&self) -> i8 {
        i8::from(self.0 != 0)
    }
}

/// Trial-division primality test; moduli here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, e)` with `n = p^e` when `n > 1` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut m = n;
    let mut e = 0;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let a = Fp::<3>::new(2);
        assert_eq!(a.mul_ref(&a), Fp::new(1));
        assert_eq!(a.add_ref(&a), Fp::new(1));
        assert_eq!(a.neg_ref(), Fp::new(1));
        assert_eq!(Fp::<3>::new(-4), Fp::new(2));
        assert_eq!(a.inverse(), Some(a));
        assert_eq!(Fp::<2>::new(0).inverse(), None);
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(7));
        assert!(!is_prime(1) && !is_prime(4) && !is_prime(9));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(3), Some((3, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn rational_parse() {
        let r = BigRational::parse_decimal("-3/6").unwrap();
        assert_eq!(r, BigRational::new((-1).into(), 2.into()));
        assert!(BigRational::parse_decimal("1/0").is_none());
    }
}
