//! Truncated Laurent series `Σ_{e < order} c_e q^e` with finitely many negative terms.

use num_bigint::BigInt;
use serde::Serialize;

use super::coeff::Coeff;
use super::laurent::LaurentPoly;
use super::rational::RationalFn;
use super::RingError;

/// A series known exactly for every exponent below `order`.
///
/// `coeffs[k]` is the coefficient of `q^(low + k)`; `coeffs.len() == order - low`.
/// Leading zeros are stripped, so a series that vanishes to the working
/// precision has `low == order` and no stored coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries<C: Coeff> {
    low: i32,
    order: i32,
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn zero(order: i32) -> Self {
        TruncatedSeries {
            low: order,
            order,
            coeffs: Vec::new(),
        }
    }

    fn normalized(low: i32, order: i32, mut coeffs: Vec<C>) -> Self {
        debug_assert_eq!(coeffs.len() as i32, order - low);
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            coeffs.drain(..lead);
        }
        TruncatedSeries {
            low: low + lead as i32,
            order,
            coeffs,
        }
    }

    pub fn from_laurent(p: &LaurentPoly<C>, order: i32) -> Self {
        let low = p.min_exp().unwrap_or(order).min(order);
        let mut coeffs = vec![C::zero(); (order - low) as usize];
        for (e, c) in p.terms() {
            if *e < order {
                coeffs[(e - low) as usize] = c.clone();
            }
        }
        Self::normalized(low, order, coeffs)
    }

    /// Absolute precision: coefficients are exact for exponents `< order`.
    pub fn order(&self) -> i32 {
        self.order
    }

    /// Lowest exponent with a nonzero coefficient, or `order` if none is known.
    pub fn valuation(&self) -> i32 {
        self.low
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i32) -> Result<C, RingError> {
        if e >= self.order {
            return Err(RingError::BeyondPrecision {
                exponent: e,
                order: self.order,
            });
        }
        if e < self.low {
            return Ok(C::zero());
        }
        Ok(self.coeffs[(e - self.low) as usize].clone())
    }

    /// Known terms as a Laurent polynomial.
    pub fn to_laurent(&self) -> LaurentPoly<C> {
        LaurentPoly::from_dense(self.low, self.coeffs.clone())
    }

    pub fn truncate(&self, order: i32) -> Self {
        assert!(order <= self.order, "cannot raise precision by truncation");
        if order <= self.low {
            return Self::zero(order);
        }
        let keep = (order - self.low) as usize;
        Self::normalized(self.low, order, self.coeffs[..keep].to_vec())
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let order = self.order.min(other.order);
        let low = self.low.min(other.low).min(order);
        let mut coeffs = vec![C::zero(); (order - low) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = self.low + k as i32;
            if e < order {
                coeffs[(e - low) as usize] = c.clone();
            }
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            let e = other.low + k as i32;
            if e < order {
                let slot = &mut coeffs[(e - low) as usize];
                *slot = if negate {
                    slot.sub_ref(c)
                } else {
                    slot.add_ref(c)
                };
            }
        }
        Self::normalized(low, order, coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = (self.low + other.order).min(other.low + self.order);
        let low = (self.low + other.low).min(order);
        let mut coeffs = vec![C::zero(); (order - low) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.low + i as i32;
            for (j, b) in other.coeffs.iter().enumerate() {
                let e = ea + other.low + j as i32;
                if e >= order {
                    break;
                }
                coeffs[(e - low) as usize].add_mul_assign(a, b);
            }
        }
        Self::normalized(low, order, coeffs)
    }

    /// Product with an exact Laurent polynomial.
    pub fn mul_laurent(&self, p: &LaurentPoly<C>) -> Self {
        let Some(m) = p.min_exp() else {
            return Self::zero(self.order);
        };
        let order = self.order + m;
        let low = (self.low + m).min(order);
        let mut coeffs = vec![C::zero(); (order - low) as usize];
        for (e, c) in p.terms() {
            for (k, a) in self.coeffs.iter().enumerate() {
                let t = self.low + k as i32 + e;
                if t >= order {
                    break;
                }
                coeffs[(t - low) as usize].add_mul_assign(c, a);
            }
        }
        Self::normalized(low, order, coeffs)
    }

    /// Multiplication by `1/(1 - q^m)`, `m ≥ 1`.
    pub fn div_one_minus_q_pow(&self, m: u32) -> Self {
        let m = m as usize;
        let mut coeffs = self.coeffs.clone();
        for k in m..coeffs.len() {
            let prev = coeffs[k - m].clone();
            coeffs[k] = coeffs[k].add_ref(&prev);
        }
        Self::normalized(self.low, self.order, coeffs)
    }

    /// Multiplicative inverse; the lowest known coefficient must be a unit.
    pub fn inverse(&self) -> Result<Self, RingError> {
        let lead = self.coeffs.first().ok_or(RingError::DivisionByZero)?;
        if !lead.is_unit() {
            return Err(RingError::NonUnitLeadingCoefficient);
        }
        let v = self.low;
        let rel = (self.order - v) as usize;
        let inv_lead = C::one()
            .div_exact(lead)
            .ok_or(RingError::NonUnitLeadingCoefficient)?;
        let mut out: Vec<C> = Vec::with_capacity(rel);
        for n in 0..rel {
            let mut acc = if n == 0 { C::one() } else { C::zero() };
            for k in 1..=n {
                let t = self.coeffs[k].mul_ref(&out[n - k]);
                acc = acc.sub_ref(&t);
            }
            out.push(acc.mul_ref(&inv_lead));
        }
        Ok(Self::normalized(-v, self.order - 2 * v, out))
    }

    pub fn div(&self, other: &Self) -> Result<Self, RingError> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `s ∈ q·C[[q]]` to the working precision (needs `order ≥ 1`).
    pub fn in_q_power_series(&self) -> Result<bool, RingError> {
        if self.order < 1 {
            return Err(RingError::BeyondPrecision {
                exponent: 0,
                order: self.order,
            });
        }
        Ok(self.low >= 1)
    }

    /// `s ∈ 1 + q·C[[q]]` to the working precision.
    pub fn in_one_plus_q(&self) -> Result<bool, RingError> {
        if self.order < 1 {
            return Err(RingError::BeyondPrecision {
                exponent: 0,
                order: self.order,
            });
        }
        Ok(self.low >= 0 && self.coeff(0)?.is_one())
    }

    /// `s ∈ C[[q]]`.
    pub fn in_power_series(&self) -> bool {
        self.low >= 0
    }

    /// Terms of exponent `< bound`, for diagnostics.
    pub fn prefix(&self, bound: i32) -> LaurentPoly<C> {
        self.truncate(bound.min(self.order)).to_laurent()
    }
}

/// The unique bar-invariant `c` with `s - c ∈ qZ[[q]]`.
///
/// `c = a_0 + Σ_{n>0} a_{-n}(q^n + q^-n)` where `a_k` is the coefficient of `q^k` in `s`.
pub fn symmetric_round<C: Coeff>(s: &TruncatedSeries<C>) -> Result<LaurentPoly<C>, RingError> {
    let reach = (-s.valuation()).max(0);
    if s.order() < 1 {
        return Err(RingError::RoundingWindow {
            reach,
            order: s.order(),
        });
    }
    let mut terms = Vec::new();
    for n in 0..=reach {
        let a = s.coeff(-n)?;
        if a.is_zero() {
            continue;
        }
        if n == 0 {
            terms.push((0, a));
        } else {
            terms.push((n, a.clone()));
            terms.push((-n, a));
        }
    }
    Ok(LaurentPoly::from_terms(terms))
}

/// Expansion of a rational function at `q = 0` to exponents `< order`.
pub fn series_expand(r: &RationalFn, order: i32) -> Result<TruncatedSeries<BigInt>, RingError> {
    let den = r.den();
    if den.is_zero() {
        return Err(RingError::DivisionByZero);
    }
    let dv = den.min_exp().unwrap();
    let Some(nv) = r.num().min_exp() else {
        return Ok(TruncatedSeries::zero(order));
    };
    // 1/den loses 2·dv of precision and the numerator shifts it by nv.
    let den_order = order - nv + 2 * dv;
    let den_s = TruncatedSeries::from_laurent(den, dv + (den_order - dv).max(1));
    let inv = den_s.inverse()?;
    let out = inv.mul_laurent(r.num());
    Ok(if out.order() > order {
        out.truncate(order)
    } else {
        out
    })
}

#[derive(Serialize)]
struct SeriesJson {
    order: i32,
    low: i32,
    coeffs: Vec<String>,
}

impl<C: Coeff> Serialize for TruncatedSeries<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesJson {
            order: self.order,
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| c.to_decimal()).collect(),
        }
        .serialize(s)
    }
}
