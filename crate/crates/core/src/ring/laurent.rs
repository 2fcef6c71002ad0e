//! Laurent polynomials in one variable `q`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::coeff::{Coeff, Fp};
use super::RingError;

/// A Laurent polynomial `Σ c_e q^e` stored as exponent-sorted nonzero terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<C: Coeff> {
    terms: Vec<(i32, C)>,
}

impl<C: Coeff> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(C::from_i64(c))
    }

    pub fn monomial(exp: i32, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly {
                terms: vec![(exp, c)],
            }
        }
    }

    /// `q^exp`
    pub fn q_pow(exp: i32) -> Self {
        Self::monomial(exp, C::one())
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i32, C)>>(terms: I) -> Self {
        let mut v: Vec<(i32, C)> = terms.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, C)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc = lc.add_ref(&c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        LaurentPoly { terms: out }
    }

    /// Builds from a dense coefficient slice starting at exponent `low`.
    pub fn from_dense(low: i32, coeffs: Vec<C>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (low + k as i32, c))
            .collect();
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> &[(i32, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(i32, C)> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    /// Largest `|e|` over the support, 0 for the zero polynomial.
    pub fn max_abs_exp(&self) -> i32 {
        self.terms.iter().map(|t| t.0.abs()).max().unwrap_or(0)
    }

    pub fn coeff(&self, exp: i32) -> C {
        match self.terms.binary_search_by_key(&exp, |t| t.0) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => C::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(i32, C)> {
        self.terms.last()
    }

    pub fn lowest(&self) -> Option<&(i32, C)> {
        self.terms.first()
    }

    /// `c · q^e` with a single term.
    pub fn as_monomial(&self) -> Option<(i32, &C)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((*e, c)),
            _ => None,
        }
    }

    /// Units of `C[q, q^-1]` are exactly `c q^k` with `c` a unit of `C`.
    pub fn is_unit(&self) -> bool {
        self.as_monomial().is_some_and(|(_, c)| c.is_unit())
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (*e, c.mul_ref(s)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        LaurentPoly { terms }
    }

    /// The bar involution `q ↦ q^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(e, c)| (-e, c.clone()))
                .collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// Substitutes `q ↦ q^k` for `k > 0`.
    pub fn dilate(&self, k: i32) -> Self {
        assert!(k > 0, "dilation factor must be positive");
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> LaurentPoly<D> {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Every coefficient lies in `{c : pred(c)}`.
    pub fn all_coeffs(&self, pred: impl Fn(&C) -> bool) -> bool {
        self.terms.iter().all(|(_, c)| pred(c))
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                let c = if negate {
                    b[j].1.neg_ref()
                } else {
                    b[j].1.clone()
                };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate {
                    a[i].1.sub_ref(&b[j].1)
                } else {
                    a[i].1.add_ref(&b[j].1)
                };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        LaurentPoly { terms: out }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some((e, c)) = other.as_monomial() {
            return self.scale(c).shift(e);
        }
        if let Some((e, c)) = self.as_monomial() {
            return other.scale(c).shift(e);
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.max_exp().unwrap() + other.max_exp().unwrap();
        let mut buf = vec![C::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                buf[(ea + eb - lo) as usize].add_mul_assign(ca, cb);
            }
        }
        Self::from_dense(lo, buf)
    }

    /// `self += a * b` without intermediate allocation of the product's terms.
    pub fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.add_impl(&a.mul_impl(b), false);
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division; fails when `divisor` does not divide `self` in `C[q, q^-1]`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, RingError> {
        if divisor.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some((e, c)) = divisor.as_monomial() {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (ea, ca) in &self.terms {
                let q = ca.div_exact(c).ok_or(RingError::NotDivisible)?;
                terms.push((ea - e, q));
            }
            return Ok(LaurentPoly { terms });
        }
        // Long division on dense buffers, from the top degree down.
        let d_lo = divisor.min_exp().unwrap();
        let d_hi = divisor.max_exp().unwrap();
        let d_lead = divisor.terms.last().unwrap().1.clone();
        let n_lo = self.min_exp().unwrap();
        let n_hi = self.max_exp().unwrap();
        if n_hi - n_lo < d_hi - d_lo {
            return Err(RingError::NotDivisible);
        }
        let mut rem = vec![C::zero(); (n_hi - n_lo + 1) as usize];
        for (e, c) in &self.terms {
            rem[(e - n_lo) as usize] = c.clone();
        }
        let q_len = ((n_hi - n_lo) - (d_hi - d_lo) + 1) as usize;
        let mut quot = vec![C::zero(); q_len];
        let d_span = (d_hi - d_lo) as usize;
        for k in (0..q_len).rev() {
            let top = &rem[k + d_span];
            if top.is_zero() {
                continue;
            }
            let qc = top.div_exact(&d_lead).ok_or(RingError::NotDivisible)?;
            for (e, c) in &divisor.terms {
                let idx = k + (e - d_lo) as usize;
                rem[idx] = rem[idx].sub_ref(&qc.mul_ref(c));
            }
            quot[k] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(RingError::NotDivisible);
        }
        Ok(Self::from_dense(n_lo - d_lo, quot))
    }

    /// Sum of `|c|`-like sizes; used only for heuristics and diagnostics.
    pub fn degree_span(&self) -> i32 {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }
}

impl LaurentPoly<BigInt> {
    /// Coefficientwise reduction modulo the prime `P`.
    pub fn mod_ell<const P: u64>(&self) -> Result<LaurentPoly<Fp<P>>, RingError> {
        if !super::coeff::is_prime(P) {
            return Err(RingError::NotPrime(P));
        }
        Ok(self.map_coeffs(Fp::<P>::from_bigint))
    }

    /// All coefficients are `≥ 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.all_coeffs(|c| c.signum_i8() >= 0)
    }

    /// Evaluation at an integer point (requires `t ≠ 0` when negative powers occur).
    pub fn eval_i64(&self, t: i64) -> num_rational::BigRational {
        use num_rational::BigRational;
        let t = BigRational::from_integer(BigInt::from(t));
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num_traits::pow(t.clone(), *e as usize)
            } else {
                num_traits::pow(t.recip(), (-e) as usize)
            };
            acc += p * BigRational::from_integer(c.clone());
        }
        acc
    }
}

impl<C: Coeff> Zero for LaurentPoly<C> {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coeff> One for LaurentPoly<C> {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl<'a, C: Coeff> Add<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: &'a LaurentPoly<C>) -> LaurentPoly<C> {
        self.add_impl(rhs, false)
    }
}

impl<'a, C: Coeff> Sub<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: &'a LaurentPoly<C>) -> LaurentPoly<C> {
        self.add_impl(rhs, true)
    }
}

impl<'a, C: Coeff> Mul<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: &'a LaurentPoly<C>) -> LaurentPoly<C> {
        self.mul_impl(rhs)
    }
}

impl<C: Coeff> Add for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> Self {
        self.add_impl(&rhs, false)
    }
}

impl<C: Coeff> Sub for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> Self {
        self.add_impl(&rhs, true)
    }
}

impl<C: Coeff> Mul for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> Self {
        self.mul_impl(&rhs)
    }
}

impl<C: Coeff> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .into_iter()
                .map(|(e, c)| (e, c.neg_ref()))
                .collect(),
        }
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -(self.clone())
    }
}

impl<C: Coeff> AddAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn add_assign(&mut self, rhs: &LaurentPoly<C>) {
        *self = self.add_impl(rhs, false);
    }
}

impl<C: Coeff> SubAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn sub_assign(&mut self, rhs: &LaurentPoly<C>) {
        *self = self.add_impl(rhs, true);
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let s = c.to_decimal();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = mag == "1";
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if *e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// JSON form: `[[exponent, "coefficient"], ...]` with ascending exponents.
impl<C: Coeff> Serialize for LaurentPoly<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(i32, String)> = self
            .terms
            .iter()
            .map(|(e, c)| (*e, c.to_decimal()))
            .collect();
        pairs.serialize(s)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for LaurentPoly<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs: Vec<(i32, String)> = Vec::deserialize(d)?;
        let mut terms = Vec::with_capacity(pairs.len());
        for (k, (e, c)) in pairs.into_iter().enumerate() {
            if k > 0 && terms.last().is_some_and(|(le, _): &(i32, C)| *le >= e) {
                return Err(D::Error::custom("exponents must be strictly ascending"));
            }
            let c = C::parse_decimal(&c)
                .ok_or_else(|| D::Error::custom(format!("bad coefficient {c:?}")))?;
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficients are not stored"));
            }
            terms.push((e, c));
        }
        Ok(LaurentPoly { terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ZLaurent;

    fn z(terms: &[(i32, i64)]) -> ZLaurent {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn square_of_q_plus_inverse() {
        let a = z(&[(1, 1), (-1, 1)]);
        assert_eq!(&a * &a, z(&[(2, 1), (0, 2), (-2, 1)]));
    }

    #[test]
    fn additive_identity_and_cancellation() {
        let x = z(&[(3, 2), (-1, -5)]);
        assert_eq!(&x + &ZLaurent::zero(), x);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn char_two_square() {
        let a: LaurentPoly<Fp<2>> = LaurentPoly::from_terms([(1, Fp::new(1)), (0, Fp::new(1))]);
        assert_eq!(
            &a * &a,
            LaurentPoly::from_terms([(2, Fp::new(1)), (0, Fp::new(1))])
        );
    }

    #[test]
    fn bar_examples() {
        assert_eq!(z(&[(2, 1), (1, 3)]).bar(), z(&[(-2, 1), (-1, 3)]));
        let s = z(&[(1, 1), (-1, 1)]);
        assert_eq!(s.bar(), s);
    }

    #[test]
    fn mod_ell_examples() {
        let r = z(&[(1, 2), (0, 3)]).mod_ell::<2>().unwrap();
        assert_eq!(r, LaurentPoly::one());
        let s = z(&[(1, 1), (-1, 1)]).mod_ell::<3>().unwrap();
        assert_eq!(
            s,
            LaurentPoly::from_terms([(1, Fp::new(1)), (-1, Fp::new(1))])
        );
        assert!(matches!(
            z(&[(0, 1)]).mod_ell::<4>(),
            Err(RingError::NotPrime(4))
        ));
    }

    #[test]
    fn exact_division() {
        let a = z(&[(1, 1), (-1, 1)]);
        let b = z(&[(3, 1), (0, -2), (-4, 7)]);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert_eq!(p.div_exact(&b).unwrap(), a);
        assert!(z(&[(0, 1)]).div_exact(&a).is_err());
        assert!(z(&[(1, 3)]).div_exact(&z(&[(0, 2)])).is_err());
    }

    #[test]
    fn json_roundtrip_and_order() {
        let big: BigInt = "-12345678901234567890".parse().unwrap();
        let a = ZLaurent::from_terms([(-2, BigInt::from(1)), (0, big), (5, BigInt::from(3))]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"[[-2,"1"],[0,"-12345678901234567890"],[5,"3"]]"#);
        let back: ZLaurent = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<ZLaurent>(r#"[[1,"1"],[0,"1"]]"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(
            z(&[(2, 1), (0, -2), (-1, 3)]).to_string(),
            "q^2 - 2 + 3*q^-1"
        );
        assert_eq!(ZLaurent::zero().to_string(), "0");
    }
}
