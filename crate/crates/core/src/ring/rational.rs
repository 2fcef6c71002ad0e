//! Rational functions in `q` over `Z`, kept in lowest terms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{self, DensePoly};
use super::RingError;
use crate::ZLaurent;

/// `num / den` with `den ∈ Z[q]`, `den(0) > 0`, and `gcd(num, den) = 1` up to powers of `q`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFn {
    num: ZLaurent,
    den: ZLaurent,
}

fn to_dense(p: &ZLaurent) -> (i32, DensePoly) {
    let low = p.min_exp().unwrap_or(0);
    let high = p.max_exp().unwrap_or(low);
    let mut out = vec![BigInt::zero(); (high - low + 1) as usize];
    for (e, c) in p.terms() {
        out[(e - low) as usize] = c.clone();
    }
    (low, out)
}

impl RationalFn {
    pub fn new(num: ZLaurent, den: ZLaurent) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (nlow, np) = to_dense(&num);
        let (dlow, dp) = to_dense(&den);
        let g = poly::gcd(&np, &dp);
        let mut np = poly::div_exact(&np, &g).ok_or(RingError::NotDivisible)?;
        let mut dp = poly::div_exact(&dp, &g).ok_or(RingError::NotDivisible)?;
        if dp[0].is_negative() {
            np.iter_mut().for_each(|c| *c = -&*c);
            dp.iter_mut().for_each(|c| *c = -&*c);
        }
        Ok(RationalFn {
            num: ZLaurent::from_dense(nlow - dlow, np),
            den: ZLaurent::from_dense(0, dp),
        })
    }

    pub fn zero() -> Self {
        RationalFn {
            num: ZLaurent::zero(),
            den: ZLaurent::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(ZLaurent::one())
    }

    pub fn from_i64(c: i64) -> Self {
        Self::from_laurent(ZLaurent::from_i64(c))
    }

    pub fn from_laurent(p: ZLaurent) -> Self {
        RationalFn {
            num: p,
            den: ZLaurent::one(),
        }
    }

    pub fn num(&self) -> &ZLaurent {
        &self.num
    }

    pub fn den(&self) -> &ZLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_laurent(&self) -> Option<ZLaurent> {
        self.is_laurent().then(|| self.num.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(&self.num + &other.num, self.den.clone())
                .expect("nonzero denominator");
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::new(num, &self.den * &other.den).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_laurent() && other.is_laurent() {
            return Self::from_laurent(&self.num * &other.num);
        }
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero denominator")
    }

    pub fn mul_laurent(&self, p: &ZLaurent) -> Self {
        if self.is_laurent() {
            return Self::from_laurent(&self.num * p);
        }
        Self::new(&self.num * p, self.den.clone()).expect("nonzero denominator")
    }

    pub fn inverse(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self, RingError> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `q ↦ q^{-1}`.
    pub fn bar(&self) -> Self {
        if self.is_laurent() {
            return Self::from_laurent(self.num.bar());
        }
        Self::new(self.num.bar(), self.den.bar()).expect("nonzero denominator")
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RationalJson {
    num: ZLaurent,
    den: ZLaurent,
}

impl Serialize for RationalFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RationalJson {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFn {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RationalJson::deserialize(d)?;
        RationalFn::new(raw.num, raw.den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(terms: &[(i32, i64)]) -> ZLaurent {
        ZLaurent::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn reduces_to_lowest_terms() {
        // (1 - q^2) / (1 - q) = 1 + q
        let r = RationalFn::new(z(&[(0, 1), (2, -1)]), z(&[(0, 1), (1, -1)])).unwrap();
        assert_eq!(r.to_laurent(), Some(z(&[(0, 1), (1, 1)])));
        // 2q / (-4q^3) = -1/2 q^-2
        let r = RationalFn::new(z(&[(1, 2)]), z(&[(3, -4)])).unwrap();
        assert_eq!(r.num(), &z(&[(-2, -1)]));
        assert_eq!(r.den(), &z(&[(0, 2)]));
    }

    #[test]
    fn field_operations() {
        let a = RationalFn::new(ZLaurent::one(), z(&[(0, 1), (1, -1)])).unwrap();
        let b = RationalFn::new(ZLaurent::one(), z(&[(0, 1), (1, 1)])).unwrap();
        let s = a.add(&b);
        assert_eq!(
            s,
            RationalFn::new(z(&[(0, 2)]), z(&[(0, 1), (2, -1)])).unwrap()
        );
        assert_eq!(a.mul(&a.inverse().unwrap()), RationalFn::one());
        assert_eq!(a.sub(&a), RationalFn::zero());
        assert!(RationalFn::zero().inverse().is_err());
        let bar = a.bar();
        // 1/(1 - q^-1) = -q/(1 - q)
        assert_eq!(
            bar,
            RationalFn::new(z(&[(1, -1)]), z(&[(0, 1), (1, -1)])).unwrap()
        );
    }

    #[test]
    fn json_roundtrip() {
        let a = RationalFn::new(z(&[(-1, 3)]), z(&[(0, 1), (4, -1)])).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        let b: RationalFn = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }
}
