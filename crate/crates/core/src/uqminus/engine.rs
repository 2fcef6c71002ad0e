//! Word-coordinate arithmetic for integral elements of `U_q^-`.
//!
//! An element `x` of weight `β` is carried by two Laurent vectors over the words of `β`:
//! `Ψ(x)(w)`, the scalar of `e'_{w_n} ⋯ e'_{w_1} x`, which is injective on `U_q^-`;
//! and, for elements with a chosen free representative, `W(x)(w) = E_β · coeff_w`
//! with `E_β = Π_i [n_i]!_i`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::Serialize;

use super::{FreeElement, Monomial, MonomialExpr, UqError, Word, WordSpace};
use crate::cartan::{CartanDatum, DiagramAutomorphism, Weight};
use crate::ring::{RationalFn, TruncatedSeries};
use crate::ZLaurent;

use super::monomial::weight_factorial;

/// `Ψ`-coordinates of an element of one weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element {
    weight: Weight,
    psi: Vec<ZLaurent>,
}

impl Element {
    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn psi(&self) -> &[ZLaurent] {
        &self.psi
    }

    pub fn is_zero(&self) -> bool {
        self.psi.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(self.weight, other.weight, "weight mismatch");
        Element {
            weight: self.weight.clone(),
            psi: self
                .psi
                .iter()
                .zip(&other.psi)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        assert_eq!(self.weight, other.weight, "weight mismatch");
        Element {
            weight: self.weight.clone(),
            psi: self
                .psi
                .iter()
                .zip(&other.psi)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &ZLaurent) -> Element {
        Element {
            weight: self.weight.clone(),
            psi: self.psi.iter().map(|a| a * c).collect(),
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Element, c: &ZLaurent) {
        assert_eq!(self.weight, other.weight, "weight mismatch");
        for (a, b) in self.psi.iter_mut().zip(&other.psi) {
            if !b.is_zero() {
                a.add_mul(b, c);
            }
        }
    }

    pub fn max_abs_exp(&self) -> i32 {
        self.psi.iter().map(|c| c.max_abs_exp()).max().unwrap_or(0)
    }
}

/// Scaled word coefficients `W(x)` of a free representative, stored sparsely.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ScaledWords {
    entries: BTreeMap<usize, ZLaurent>,
}

impl ScaledWords {
    pub fn entries(&self) -> impl Iterator<Item = (usize, &ZLaurent)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn get(&self, k: usize) -> Option<&ZLaurent> {
        self.entries.get(&k)
    }

    pub fn add_term(&mut self, k: usize, c: &ZLaurent) {
        if c.is_zero() {
            return;
        }
        let e = self.entries.entry(k).or_default();
        *e += c;
        if e.is_zero() {
            self.entries.remove(&k);
        }
    }

    pub fn bar(&self) -> ScaledWords {
        ScaledWords {
            entries: self.entries.iter().map(|(k, v)| (*k, v.bar())).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_abs_exp(&self) -> i32 {
        self.entries
            .values()
            .map(|c| c.max_abs_exp())
            .max()
            .unwrap_or(0)
    }
}

/// `num / Π_k (1 - q^{m_k})`: the exact value of the form.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FormValue {
    pub num: ZLaurent,
    pub den: Vec<u32>,
}

impl FormValue {
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn series(&self, order: i32) -> TruncatedSeries<num_bigint::BigInt> {
        let mut s = TruncatedSeries::from_laurent(&self.num, order);
        for &m in &self.den {
            s = s.div_one_minus_q_pow(m);
        }
        s
    }

    pub fn to_rational(&self) -> RationalFn {
        let mut den = ZLaurent::one();
        for &m in &self.den {
            den = &den * &ZLaurent::from_terms([(0, 1.into()), (m as i32, (-1).into())]);
        }
        RationalFn::new(self.num.clone(), den).expect("nonzero denominator")
    }

    /// Value lies in `qZ[[q]]`.
    pub fn in_q_power_series(&self) -> bool {
        self.series(1).valuation() >= 1
    }

    /// Value lies in `1 + qZ[[q]]`.
    pub fn in_one_plus_q(&self) -> bool {
        let s = self.series(1);
        s.valuation() >= 0 && s.coeff(0).map(|c| c == 1.into()).unwrap_or(false)
    }
}

/// For each target word, the `(left index, right index, twist exponent)` splittings.
struct ShuffleTable {
    entries: Vec<Vec<(u32, u32, i32)>>,
}

/// Shared context: word spaces, shuffle tables and monomial coordinates for one datum.
pub struct Algebra {
    datum: CartanDatum,
    spaces: RwLock<HashMap<Weight, Arc<WordSpace>>>,
    shuffles: RwLock<HashMap<(Weight, Weight), Arc<ShuffleTable>>>,
    monomials: RwLock<HashMap<Monomial, Arc<Element>>>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra")
            .field("datum", &self.datum.name())
            .finish()
    }
}

impl Algebra {
    pub fn new(datum: CartanDatum) -> Self {
        Algebra {
            datum,
            spaces: RwLock::new(HashMap::new()),
            shuffles: RwLock::new(HashMap::new()),
            monomials: RwLock::new(HashMap::new()),
        }
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn space(&self, b: &Weight) -> Arc<WordSpace> {
        if let Some(s) = self.spaces.read().unwrap().get(b) {
            return s.clone();
        }
        let s = Arc::new(WordSpace::new(b));
        self.spaces
            .write()
            .unwrap()
            .entry(b.clone())
            .or_insert(s)
            .clone()
    }

    pub fn zero(&self, b: &Weight) -> Element {
        Element {
            weight: b.clone(),
            psi: vec![ZLaurent::zero(); self.space(b).len()],
        }
    }

    pub fn one(&self) -> Element {
        Element {
            weight: Weight::zero(self.rank()),
            psi: vec![ZLaurent::one()],
        }
    }

    /// `f_i^{(n)}`: supported on `i^n` with value `q_i^{-n(n-1)/2}`.
    pub fn f_power(&self, i: usize, n: u32) -> Element {
        let b = Weight::simple(self.rank(), i, n);
        let mut e = self.zero(&b);
        let exp = -(self.datum.d(i) as i64 * n as i64 * (n as i64 - 1) / 2);
        e.psi[0] = ZLaurent::q_pow(exp as i32);
        e
    }

    fn shuffle(&self, b: &Weight, g: &Weight) -> Arc<ShuffleTable> {
        let key = (b.clone(), g.clone());
        if let Some(t) = self.shuffles.read().unwrap().get(&key) {
            return t.clone();
        }
        let target = self.space(&b.add(g));
        let sb = self.space(b);
        let sg = self.space(g);
        let h = b.height() as usize;
        let form = self.datum.form();
        let entries: Vec<Vec<(u32, u32, i32)>> = target
            .words()
            .par_iter()
            .map(|w| {
                let n = w.len();
                let letters = w.letters();
                let mut out = Vec::new();
                for_each_subset(n, h, |mask| {
                    let u = w.select(mask, true);
                    let Some(ui) = sb.index_of(&u) else { return };
                    let v = w.select(mask, false);
                    let vi = sg.index_of(&v).expect("complementary weight");
                    let mut e = 0i64;
                    for bpos in 0..n {
                        if (mask >> bpos) & 1 == 0 {
                            continue;
                        }
                        for apos in 0..bpos {
                            if (mask >> apos) & 1 == 0 {
                                e += form[letters[apos] as usize][letters[bpos] as usize];
                            }
                        }
                    }
                    out.push((ui as u32, vi as u32, -e as i32));
                });
                out
            })
            .collect();
        let t = Arc::new(ShuffleTable { entries });
        self.shuffles
            .write()
            .unwrap()
            .entry(key)
            .or_insert(t)
            .clone()
    }

    /// `Ψ(xy)(w) = Σ_K q^{-e(K)} Ψ(x)(w|K) Ψ(y)(w|K^c)`.
    pub fn product(&self, x: &Element, y: &Element) -> Element {
        let table = self.shuffle(&x.weight, &y.weight);
        let psi: Vec<ZLaurent> = table
            .entries
            .par_iter()
            .map(|row| {
                let mut acc = ZLaurent::zero();
                for &(u, v, e) in row {
                    let a = &x.psi[u as usize];
                    let b = &y.psi[v as usize];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc += &(a * b).shift(e);
                }
                acc
            })
            .collect();
        Element {
            weight: x.weight.add(&y.weight),
            psi,
        }
    }

    /// `Ψ(e_i' x)(w) = Ψ(x)(i·w)`; `None` when the weight has no `α_i`.
    pub fn e_prime(&self, i: usize, x: &Element) -> Option<Element> {
        self.e_prime_pow(i, 1, x)
    }

    pub fn e_prime_pow(&self, i: usize, k: u32, x: &Element) -> Option<Element> {
        let target = x.weight.sub_simple(i, k)?;
        let src = self.space(&x.weight);
        let dst = self.space(&target);
        let prefix = Word::repeat(i, k);
        let psi = dst
            .words()
            .iter()
            .map(|w| x.psi[src.index_of(&prefix.concat(w)).expect("same weight")].clone())
            .collect();
        Some(Element {
            weight: target,
            psi,
        })
    }

    /// Largest `k` with `e_i'^k x ≠ 0`.
    pub fn e_prime_depth(&self, i: usize, x: &Element) -> u32 {
        let sp = self.space(&x.weight);
        sp.words()
            .iter()
            .zip(&x.psi)
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, _)| w.letters().iter().take_while(|&&l| l as usize == i).count() as u32)
            .max()
            .unwrap_or(0)
    }

    /// `Ψ` of a divided-power monomial, cached.
    pub fn monomial(&self, m: &Monomial) -> Arc<Element> {
        if let Some(e) = self.monomials.read().unwrap().get(m) {
            return e.clone();
        }
        let blocks: Vec<(usize, u32)> = m.blocks().collect();
        let e = match blocks.split_first() {
            None => self.one(),
            Some((&(i, a), rest)) => {
                let tail = Monomial::from_blocks(&self.datum, rest).0;
                let t = self.monomial(&tail);
                self.product(&self.f_power(i, a), &t)
            }
        };
        let e = Arc::new(e);
        self.monomials
            .write()
            .unwrap()
            .entry(m.clone())
            .or_insert(e)
            .clone()
    }

    pub fn expr_element(&self, b: &Weight, expr: &MonomialExpr) -> Element {
        let mut out = self.zero(b);
        for (m, c) in expr.terms() {
            out.add_scaled(&self.monomial(m), c);
        }
        out
    }

    /// `W` of a monomial combination.
    pub fn expr_words(&self, b: &Weight, expr: &MonomialExpr) -> ScaledWords {
        let sp = self.space(b);
        let mut out = ScaledWords::default();
        for (m, c) in expr.terms() {
            let k = sp.index_of(&m.word()).expect("monomial of this weight");
            out.add_term(k, &(c * &m.word_weight_factor(&self.datum)));
        }
        out
    }

    /// `Ψ(f_v)`.
    pub fn word_element(&self, v: &Word) -> Element {
        let mut e = self.one();
        for &l in v.letters().iter().rev() {
            e = self.product(&self.f_power(l as usize, 1), &e);
        }
        e
    }

    /// `E_β = Π_i [n_i]!_i`.
    pub fn weight_factorial(&self, b: &Weight) -> ZLaurent {
        weight_factorial(&self.datum, b)
    }

    /// `Ψ` of the element whose scaled word coefficients are `w`.
    pub fn psi_from_words(&self, b: &Weight, w: &ScaledWords) -> Result<Element, UqError> {
        let sp = self.space(b);
        let mut acc = self.zero(b);
        for (k, c) in w.entries() {
            acc.add_scaled(&self.word_element(&sp.words()[k]), c);
        }
        let e = self.weight_factorial(b);
        let psi = acc
            .psi
            .iter()
            .map(|c| c.div_exact(&e).map_err(|_| UqError::NotIntegral))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Element {
            weight: b.clone(),
            psi,
        })
    }

    /// `(x, y) = q^s Σ_w W(y)(w) Ψ(x)(w) / Π_{i, 1≤k≤n_i} (1 - q^{2 d_i k})`.
    pub fn pair(&self, x: &Element, y: &ScaledWords) -> FormValue {
        let mut num = ZLaurent::zero();
        for (k, c) in y.entries() {
            let p = &x.psi[k];
            if !p.is_zero() {
                num.add_mul(p, c);
            }
        }
        let (s, den) = self.form_normalizer(&x.weight);
        FormValue {
            num: num.shift(s),
            den,
        }
    }

    fn form_normalizer(&self, b: &Weight) -> (i32, Vec<u32>) {
        let mut s = 0i64;
        let mut den = Vec::new();
        for (i, &n) in b.mults().iter().enumerate() {
            let d = self.datum.d(i) as i64;
            s += d * n as i64 * (n as i64 - 1) / 2;
            for k in 1..=n {
                den.push((2 * d * k as i64) as u32);
            }
        }
        den.sort_unstable();
        (s as i32, den)
    }

    /// `Ψ` and `W` of a free element with integral coordinates.
    pub fn from_free(&self, x: &FreeElement) -> Result<(Element, ScaledWords), UqError> {
        let b = x.weight().clone();
        let sp = self.space(&b);
        let e = RationalFn::from_laurent(self.weight_factorial(&b));
        let mut w = ScaledWords::default();
        for (word, c) in x.terms() {
            let k = sp.index_of(word).expect("homogeneous");
            let v = c.mul(&e).to_laurent().ok_or(UqError::NotIntegral)?;
            w.add_term(k, &v);
        }
        let psi = self.psi_from_words(&b, &w)?;
        Ok((psi, w))
    }

    /// The free element with scaled word coefficients `w`.
    pub fn to_free(&self, b: &Weight, w: &ScaledWords) -> FreeElement {
        let sp = self.space(b);
        let e = self.weight_factorial(b);
        FreeElement::from_terms(
            self.rank(),
            w.entries().map(|(k, c)| {
                (
                    sp.words()[k].clone(),
                    RationalFn::new(c.clone(), e.clone()).unwrap(),
                )
            }),
        )
        .map(|f| {
            if f.is_zero() {
                FreeElement::zero(b.clone())
            } else {
                f
            }
        })
        .expect("homogeneous")
    }

    /// Bar-invariance of the element represented by `w`.
    pub fn is_bar_invariant(&self, b: &Weight, w: &ScaledWords) -> bool {
        let mut delta = w.clone();
        for (k, c) in w.bar().entries() {
            delta.add_term(k, &-c);
        }
        if delta.is_zero() {
            return true;
        }
        self.psi_from_words(b, &delta)
            .map(|e| e.is_zero())
            .unwrap_or(false)
    }

    /// `Ψ(σx)(σw) = Ψ(x)(w)`.
    pub fn sigma(&self, s: &DiagramAutomorphism, x: &Element) -> Element {
        let src = self.space(&x.weight);
        let wt = s.on_weight(&x.weight);
        let dst = self.space(&wt);
        let mut psi = vec![ZLaurent::zero(); dst.len()];
        for (w, c) in src.words().iter().zip(&x.psi) {
            psi[dst.index_of(&w.map(|i| s.apply(i))).expect("permuted word")] = c.clone();
        }
        Element { weight: wt, psi }
    }
}

/// Calls `f` on every `n`-bit mask with exactly `k` bits set.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(u64)) {
    if k > n {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let mut mask: u64 = (1u64 << k) - 1;
    let limit = 1u64 << n;
    while mask < limit {
        f(mask);
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
}
