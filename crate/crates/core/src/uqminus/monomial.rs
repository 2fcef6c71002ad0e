use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Word;
use crate::cartan::{CartanDatum, Weight};
use crate::ring::{gaussian_binomial, quantum_factorial};
use crate::ZLaurent;

/// A divided-power monomial `f_{i_1}^{(a_1)} ⋯ f_{i_k}^{(a_k)}` with `i_t ≠ i_{t+1}` and `a_t ≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<(u8, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn power(i: usize, a: u32) -> Self {
        if a == 0 {
            Monomial(Vec::new())
        } else {
            Monomial(vec![(i as u8, a)])
        }
    }

    /// Builds from blocks, merging equal neighbours and dropping zero exponents.
    /// Returns the Gaussian-binomial factor produced by merging.
    pub fn from_blocks(datum: &CartanDatum, blocks: &[(usize, u32)]) -> (Monomial, ZLaurent) {
        let mut out: Vec<(u8, u32)> = Vec::with_capacity(blocks.len());
        let mut coeff = ZLaurent::one();
        for &(i, a) in blocks {
            if a == 0 {
                continue;
            }
            match out.last_mut() {
                Some((j, b)) if *j as usize == i => {
                    let m = (*b + a) as i64;
                    coeff =
                        &coeff * &gaussian_binomial(m, a as i64, datum.d(i)).expect("nonnegative");
                    *b += a;
                }
                _ => out.push((i as u8, a)),
            }
        }
        (Monomial(out), coeff)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(i, a)| (i as usize, a))
    }

    pub fn num_blocks(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self, rank: usize) -> Weight {
        let mut m = vec![0; rank];
        for &(i, a) in &self.0 {
            m[i as usize] += a;
        }
        Weight::new(m)
    }

    /// The word `i_1^{a_1} ⋯ i_k^{a_k}`.
    pub fn word(&self) -> Word {
        let mut v = Vec::new();
        for &(i, a) in &self.0 {
            v.extend(std::iter::repeat(i).take(a as usize));
        }
        Word::new(v)
    }

    /// `self · other` as a monomial times a merge coefficient.
    pub fn concat(&self, datum: &CartanDatum, other: &Monomial) -> (Monomial, ZLaurent) {
        let blocks: Vec<(usize, u32)> = self.blocks().chain(other.blocks()).collect();
        Self::from_blocks(datum, &blocks)
    }

    /// Relabels nodes by a bijection.
    pub fn map_nodes(&self, f: impl Fn(usize) -> usize) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|&(i, a)| (f(i as usize) as u8, a))
                .collect(),
        )
    }

    /// `Π_i [n_i]!_i / Π_t [a_t]!_{i_t}`: the scaled coefficient of its word.
    pub fn word_weight_factor(&self, datum: &CartanDatum) -> ZLaurent {
        let rank = datum.rank();
        let mut used = vec![0u32; rank];
        let mut out = ZLaurent::one();
        for &(i, a) in &self.0 {
            let i = i as usize;
            used[i] += a;
            out = &out
                * &gaussian_binomial(used[i] as i64, a as i64, datum.d(i)).expect("nonnegative");
        }
        out
    }

    pub fn render(&self, labels: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&(i, a)| {
                if a == 1 {
                    format!("f{}", labels[i as usize])
                } else {
                    format!("f{}^({})", labels[i as usize], a)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl Ord for Monomial {
    /// Fewer blocks first, then lexicographic on blocks.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All divided-power monomials of weight `b`, in monomial order.
pub fn enumerate_monomials(b: &Weight) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut left = b.mults().to_vec();
    let mut cur = Vec::new();
    fn rec(left: &mut [u32], cur: &mut Vec<(u8, u32)>, out: &mut Vec<Monomial>) {
        if left.iter().all(|&n| n == 0) {
            out.push(Monomial(cur.clone()));
            return;
        }
        for i in 0..left.len() {
            if left[i] == 0 || cur.last().is_some_and(|&(j, _)| j as usize == i) {
                continue;
            }
            let avail = left[i];
            for a in 1..=avail {
                left[i] -= a;
                cur.push((i as u8, a));
                rec(left, cur, out);
                cur.pop();
                left[i] += a;
            }
        }
    }
    rec(&mut left, &mut cur, &mut out);
    out.sort();
    out
}

/// A Laurent combination of divided-power monomials of one weight.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct MonomialExpr {
    #[serde(with = "term_list")]
    terms: BTreeMap<Monomial, ZLaurent>,
}

/// Terms serialize as a list of `[monomial, coefficient]` pairs, since JSON keys must be strings.
mod term_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::Monomial;
    use crate::ZLaurent;

    pub fn serialize<S: Serializer>(
        t: &BTreeMap<Monomial, ZLaurent>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        t.iter().collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<Monomial, ZLaurent>, D::Error> {
        Ok(Vec::<(Monomial, ZLaurent)>::deserialize(d)?
            .into_iter()
            .collect())
    }
}

impl MonomialExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, ZLaurent::one())
    }

    pub fn term(m: Monomial, c: ZLaurent) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MonomialExpr { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ZLaurent)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: &ZLaurent) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &MonomialExpr, c: &ZLaurent) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), &(v * c));
        }
    }

    /// `f_i^{(a)} · self`.
    pub fn left_power(&self, datum: &CartanDatum, i: usize, a: u32) -> MonomialExpr {
        let p = Monomial::power(i, a);
        let mut out = MonomialExpr::zero();
        for (m, c) in &self.terms {
            let (mm, k) = p.concat(datum, m);
            out.add_term(mm, &(c * &k));
        }
        out
    }

    /// `self · other`.
    pub fn mul(&self, datum: &CartanDatum, other: &MonomialExpr) -> MonomialExpr {
        let mut out = MonomialExpr::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (m, k) = a.concat(datum, b);
                out.add_term(m, &(&(ca * cb) * &k));
            }
        }
        out
    }

    pub fn map_nodes(
        &self,
        datum: &CartanDatum,
        f: impl Fn(usize) -> usize + Copy,
    ) -> MonomialExpr {
        let mut out = MonomialExpr::zero();
        for (m, c) in &self.terms {
            let blocks: Vec<(usize, u32)> = m.blocks().map(|(i, a)| (f(i), a)).collect();
            let (mm, k) = Monomial::from_blocks(datum, &blocks);
            out.add_term(mm, &(c * &k));
        }
        out
    }

    /// Every coefficient is bar-invariant.
    pub fn has_symmetric_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_bar_invariant())
    }

    pub fn render(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                if c.is_one() {
                    m.render(labels)
                } else {
                    format!("({c}) {}", m.render(labels))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `[n]!_i` for every node multiplicity of `b`, multiplied together.
pub fn weight_factorial(datum: &CartanDatum, b: &Weight) -> ZLaurent {
    let mut out = ZLaurent::one();
    for (i, &n) in b.mults().iter().enumerate() {
        out = &out * &quantum_factorial(n as i64, datum.d(i)).expect("nonnegative");
    }
    out
}
