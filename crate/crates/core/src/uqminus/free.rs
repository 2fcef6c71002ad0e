//! Elements of the free algebra on the `f_i` with rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::Serialize;

use super::{Monomial, Word};
use crate::cartan::{CartanDatum, DiagramAutomorphism, Weight};
use crate::ring::{quantum_factorial, RationalFn};
use crate::ZLaurent;

/// A homogeneous combination of words with coefficients in `Q(q)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeElement {
    weight: Weight,
    terms: BTreeMap<Word, RationalFn>,
}

fn insert_add(terms: &mut BTreeMap<Word, RationalFn>, w: Word, c: RationalFn) {
    if c.is_zero() {
        return;
    }
    match terms.entry(w) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get().add(&c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// `q^e` as a rational function.
fn qpow(e: i64) -> RationalFn {
    RationalFn::from_laurent(ZLaurent::q_pow(e as i32))
}

impl FreeElement {
    pub fn zero(weight: Weight) -> Self {
        FreeElement {
            weight,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::word(rank, Word::empty(), RationalFn::one())
    }

    pub fn generator(rank: usize, i: usize) -> Self {
        Self::word(rank, Word::letter(i), RationalFn::one())
    }

    pub fn word(rank: usize, w: Word, c: RationalFn) -> Self {
        let mut e = Self::zero(w.weight(rank));
        insert_add(&mut e.terms, w, c);
        e
    }

    /// Builds a homogeneous element; `None` if the words have different weights.
    pub fn from_terms(
        rank: usize,
        terms: impl IntoIterator<Item = (Word, RationalFn)>,
    ) -> Option<Self> {
        let mut out: Option<FreeElement> = None;
        for (w, c) in terms {
            let wt = w.weight(rank);
            let e = out.get_or_insert_with(|| Self::zero(wt.clone()));
            if e.weight != wt {
                return None;
            }
            insert_add(&mut e.terms, w, c);
        }
        Some(out.unwrap_or_else(|| Self::zero(Weight::zero(rank))))
    }

    /// `f_i^{(n)} = f_i^n / [n]!_i`.
    pub fn divided_power(datum: &CartanDatum, i: usize, n: u32) -> Self {
        let fact = quantum_factorial(n as i64, datum.d(i)).expect("nonnegative");
        let c = RationalFn::new(ZLaurent::one(), fact).expect("nonzero factorial");
        Self::word(datum.rank(), Word::repeat(i, n), c)
    }

    pub fn from_monomial(datum: &CartanDatum, m: &Monomial) -> Self {
        let mut out = Self::one(datum.rank());
        for (i, a) in m.blocks() {
            out = out.multiply(&Self::divided_power(datum, i, a));
        }
        out
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RationalFn)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> RationalFn {
        self.terms.get(w).cloned().unwrap_or_else(RationalFn::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff every coefficient is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.terms.values().all(|c| c.is_laurent())
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(
            self.weight, other.weight,
            "adding elements of different weights"
        );
        let mut out = self.clone();
        for (w, c) in &other.terms {
            insert_add(&mut out.terms, w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &RationalFn) -> Self {
        let mut out = Self::zero(self.weight.clone());
        for (w, v) in &self.terms {
            insert_add(&mut out.terms, w.clone(), v.mul(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RationalFn::from_i64(-1)))
    }

    /// Concatenation product.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.weight.add(&other.weight));
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                insert_add(&mut out.terms, u.concat(v), a.mul(b));
            }
        }
        out
    }

    /// `e_i'`: delete an `i` at position `k` with factor `q^{-(α_i, prefix weight)}`.
    pub fn e_prime(&self, datum: &CartanDatum, i: usize) -> Self {
        let rank = datum.rank();
        let target = self
            .weight
            .sub_simple(i, 1)
            .unwrap_or_else(|| Weight::zero(rank));
        let mut out = Self::zero(target);
        for (w, c) in &self.terms {
            let mut prefix = 0i64;
            for (k, &l) in w.letters().iter().enumerate() {
                if l as usize == i {
                    insert_add(&mut out.terms, w.without(k), c.mul(&qpow(-prefix)));
                }
                prefix += datum.pair(i, l as usize);
            }
        }
        out
    }

    /// Coefficient of the empty word.
    pub fn scalar(&self) -> RationalFn {
        self.coeff(&Word::empty())
    }

    pub fn bar(&self) -> Self {
        let mut out = Self::zero(self.weight.clone());
        for (w, c) in &self.terms {
            insert_add(&mut out.terms, w.clone(), c.bar());
        }
        out
    }

    pub fn sigma(&self, s: &DiagramAutomorphism) -> Self {
        let mut out = Self::zero(s.on_weight(&self.weight));
        for (w, c) in &self.terms {
            insert_add(&mut out.terms, w.map(|i| s.apply(i)), c.clone());
        }
        out
    }

    /// The anti-involution reversing words.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(self.weight.clone());
        for (w, c) in &self.terms {
            insert_add(&mut out.terms, w.reversed(), c.clone());
        }
        out
    }

    /// `r(x)`, multiplicative for the twisted product on `f ⊗ f`.
    pub fn coproduct_r(&self, datum: &CartanDatum) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w, c) in &self.terms {
            let n = w.len();
            let letters = w.letters();
            for mask in 0u64..(1u64 << n) {
                // Twist: a right-factor letter a before a left-factor letter b gives q^{-(α_a, α_b)}.
                let mut e = 0i64;
                for b in 0..n {
                    if (mask >> b) & 1 == 0 {
                        continue;
                    }
                    for a in 0..b {
                        if (mask >> a) & 1 == 0 {
                            e += datum.pair(letters[a] as usize, letters[b] as usize);
                        }
                    }
                }
                let left = w.select(mask, true);
                let right = w.select(mask, false);
                out.add_term(left, right, c.mul(&qpow(-e)));
            }
        }
        out
    }
}

impl Serialize for FreeElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter())
    }
}

/// A combination of `u ⊗ v` with constant left and right weights.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorElement {
    terms: BTreeMap<(Word, Word), RationalFn>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    fn add_term(&mut self, u: Word, v: Word, c: RationalFn) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((u, v)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &RationalFn)> {
        self.terms.iter()
    }

    pub fn coeff(&self, u: &Word, v: &Word) -> RationalFn {
        self.terms
            .get(&(u.clone(), v.clone()))
            .cloned()
            .unwrap_or_else(RationalFn::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `Π_k (1 - q_{w_k}^2)` for the letters of a word.
fn word_denominator(datum: &CartanDatum, w: &Word) -> ZLaurent {
    let mut d = ZLaurent::one();
    for &l in w.letters() {
        let two_d = 2 * datum.d(l as usize) as i32;
        d = &d * &ZLaurent::from_terms([(0, 1.into()), (two_d, (-1).into())]);
    }
    d
}

/// Scalar of `e'_{u_n} ⋯ e'_{u_1}` applied to the word `v`.
fn word_boson(datum: &CartanDatum, u: &[u8], v: &[u8]) -> ZLaurent {
    if u.is_empty() {
        return if v.is_empty() {
            ZLaurent::one()
        } else {
            ZLaurent::zero()
        };
    }
    let i = u[0] as usize;
    let mut out = ZLaurent::zero();
    let mut prefix = 0i64;
    for (k, &l) in v.iter().enumerate() {
        if l as usize == i {
            let mut rest = v.to_vec();
            rest.remove(k);
            let sub = word_boson(datum, &u[1..], &rest);
            if !sub.is_zero() {
                out += &sub.shift(-prefix as i32);
            }
        }
        prefix += datum.pair(i, l as usize);
    }
    out
}

/// `(f_u, f_v)` from `(f_i x, y) = (1 - q_i^2)^{-1} (x, e_i' y)` and `(1, 1) = 1`.
pub fn pair_words(datum: &CartanDatum, u: &Word, v: &Word) -> RationalFn {
    if u.len() != v.len() {
        return RationalFn::zero();
    }
    let num = word_boson(datum, u.letters(), v.letters());
    if num.is_zero() {
        return RationalFn::zero();
    }
    RationalFn::new(num, word_denominator(datum, u)).expect("nonzero denominator")
}

/// The form on the free algebra; zero across different weights.
pub fn pair(datum: &CartanDatum, x: &FreeElement, y: &FreeElement) -> RationalFn {
    if x.weight != y.weight || x.is_zero() || y.is_zero() {
        return RationalFn::zero();
    }
    let mut memo = std::collections::HashMap::new();
    let den = word_denominator(datum, &Word::from_indices(&x.weight.letters()));
    let mut num = RationalFn::zero();
    for (u, a) in &x.terms {
        for (v, b) in &y.terms {
            let k = memo
                .entry((u.clone(), v.clone()))
                .or_insert_with(|| word_boson(datum, u.letters(), v.letters()))
                .clone();
            if !k.is_zero() {
                num = num.add(&a.mul(b).mul_laurent(&k));
            }
        }
    }
    num.div(&RationalFn::from_laurent(den))
        .expect("nonzero denominator")
}

/// `(a ⊗ b, y' ⊗ y'') = (a, y')(b, y'')`.
pub fn pair_tensor(
    datum: &CartanDatum,
    t: &TensorElement,
    y1: &FreeElement,
    y2: &FreeElement,
) -> RationalFn {
    let rank = datum.rank();
    let mut out = RationalFn::zero();
    for ((u, v), c) in &t.terms {
        if u.weight(rank) != *y1.weight() || v.weight(rank) != *y2.weight() {
            continue;
        }
        let a = pair(
            datum,
            &FreeElement::word(rank, u.clone(), RationalFn::one()),
            y1,
        );
        if a.is_zero() {
            continue;
        }
        let b = pair(
            datum,
            &FreeElement::word(rank, v.clone(), RationalFn::one()),
            y2,
        );
        out = out.add(&c.mul(&a).mul(&b));
    }
    out
}

/// `Σ_{k+k'=1-a_{ii'}} (-1)^k f_i^{(k)} f_{i'} f_i^{(k')}` for `i ≠ i'`.
pub fn serre_element(datum: &CartanDatum, i: usize, j: usize) -> FreeElement {
    let top = (1 - datum.cartan(i, j)) as u32;
    let fj = FreeElement::generator(datum.rank(), j);
    let mut out: Option<FreeElement> = None;
    for k in 0..=top {
        let term = FreeElement::divided_power(datum, i, k)
            .multiply(&fj)
            .multiply(&FreeElement::divided_power(datum, i, top - k));
        let term = if k % 2 == 1 {
            term.scale(&RationalFn::from_i64(-1))
        } else {
            term
        };
        out = Some(match out {
            None => term,
            Some(o) => o.add(&term),
        });
    }
    out.expect("at least one term")
}
