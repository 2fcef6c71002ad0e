use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// An element `Σ n_i α_i` of the positive root lattice, indexed by node position.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<u32>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn new(mults: Vec<u32>) -> Self {
        Weight(mults)
    }

    pub fn simple(rank: usize, i: usize, n: u32) -> Self {
        let mut m = vec![0; rank];
        m[i] = n;
        Weight(m)
    }

    /// Weight of a word of node indices.
    pub fn of_word(rank: usize, letters: &[usize]) -> Self {
        let mut m = vec![0; rank];
        for &i in letters {
            m[i] += 1;
        }
        Weight(m)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn mults(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn height(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&n| n == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, or `None` if it leaves the positive cone.
    pub fn checked_sub(&self, other: &Weight) -> Option<Weight> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Weight)
    }

    pub fn add_simple(&self, i: usize, n: u32) -> Weight {
        let mut m = self.0.clone();
        m[i] += n;
        Weight(m)
    }

    pub fn sub_simple(&self, i: usize, n: u32) -> Option<Weight> {
        let mut m = self.0.clone();
        m[i] = m[i].checked_sub(n)?;
        Some(Weight(m))
    }

    /// The multiset of letters in ascending order.
    pub fn letters(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.height() as usize);
        for (i, &n) in self.0.iter().enumerate() {
            out.extend(std::iter::repeat(i).take(n as usize));
        }
        out
    }

    /// Compact key such as `2.0.1`.
    pub fn key(&self) -> String {
        self.0
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Human form `label:n,...` over the nonzero entries.
    pub fn display_with(&self, labels: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(i, n)| format!("{}:{}", labels[i], n))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(",")
        }
    }

    /// Parses `label:n,label:m`; unlisted nodes get multiplicity zero.
    pub fn parse_with(spec: &str, labels: &[String]) -> Result<Weight, String> {
        let mut m = vec![0u32; labels.len()];
        let spec = spec.trim();
        if spec.is_empty() || spec == "0" {
            return Ok(Weight(m));
        }
        for part in spec.split(',') {
            let (l, n) = part
                .split_once(':')
                .ok_or_else(|| format!("weight component {part:?} is not label:n"))?;
            let i = labels
                .iter()
                .position(|x| x == l.trim())
                .ok_or_else(|| format!("unknown node label {:?}", l.trim()))?;
            let n: u32 = n
                .trim()
                .parse()
                .map_err(|_| format!("bad multiplicity in {part:?}"))?;
            m[i] += n;
        }
        Ok(Weight(m))
    }
}

impl Ord for Weight {
    /// Height first, then lexicographic multiplicities.
    fn cmp(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

/// Every weight of height `≤ bound` in rank `rank`, in weight order.
pub fn weights_up_to(rank: usize, bound: u32) -> Vec<Weight> {
    let mut out = Vec::new();
    for h in 0..=bound {
        let mut cur = vec![0u32; rank];
        compositions(rank, h, 0, &mut cur, &mut out);
    }
    out.sort();
    out
}

fn compositions(rank: usize, left: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Weight>) {
    if rank == 0 {
        if left == 0 {
            out.push(Weight(Vec::new()));
        }
        return;
    }
    if pos + 1 == rank {
        cur[pos] = left;
        out.push(Weight(cur.clone()));
        return;
    }
    for n in 0..=left {
        cur[pos] = n;
        compositions(rank, left - n, pos + 1, cur, out);
    }
    cur[pos] = 0;
}
