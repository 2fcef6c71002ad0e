use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::Weight;

/// A word `f_{i_1} ⋯ f_{i_n}` as its sequence of node indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn from_indices(letters: &[usize]) -> Self {
        Word(
            letters
                .iter()
                .map(|&i| u8::try_from(i).expect("node index below 256"))
                .collect(),
        )
    }

    pub fn letter(i: usize) -> Self {
        Self::from_indices(&[i])
    }

    pub fn repeat(i: usize, n: u32) -> Self {
        Self::from_indices(&vec![i; n as usize])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self, rank: usize) -> Weight {
        let idx: Vec<usize> = self.0.iter().map(|&c| c as usize).collect();
        Weight::of_word(rank, &idx)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prepend(&self, i: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(i as u8);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn without(&self, pos: usize) -> Word {
        let mut v = self.0.clone();
        v.remove(pos);
        Word(v)
    }

    pub fn map(&self, f: impl Fn(usize) -> usize) -> Word {
        Word(self.0.iter().map(|&c| f(c as usize) as u8).collect())
    }

    /// Letters at the positions where `mask` has a set bit, in order.
    pub fn select(&self, mask: u64, keep: bool) -> Word {
        Word(
            self.0
                .iter()
                .enumerate()
                .filter(|(k, _)| ((mask >> k) & 1 == 1) == keep)
                .map(|(_, &c)| c)
                .collect(),
        )
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All words of one weight, lexicographically ordered and indexed.
#[derive(Debug)]
pub struct WordSpace {
    weight: Weight,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl WordSpace {
    pub fn new(weight: &Weight) -> Self {
        let mut words = Vec::new();
        let mut counts: Vec<u32> = weight.mults().to_vec();
        let mut cur = Vec::with_capacity(weight.height() as usize);
        permutations(&mut counts, &mut cur, &mut words);
        let index = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, w)| (w, k))
            .collect();
        WordSpace {
            weight: weight.clone(),
            words,
            index,
        }
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }
}

fn permutations(counts: &mut [u32], cur: &mut Vec<u8>, out: &mut Vec<Word>) {
    if counts.iter().all(|&c| c == 0) {
        out.push(Word(cur.clone()));
        return;
    }
    for i in 0..counts.len() {
        if counts[i] == 0 {
            continue;
        }
        counts[i] -= 1;
        cur.push(i as u8);
        permutations(counts, cur, out);
        cur.pop();
        counts[i] += 1;
    }
}
