use serde::Serialize;

use super::{weights_up_to, CartanDatum, CartanError, Weight};

/// An admissible permutation of the nodes, with its orbit decomposition.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DiagramAutomorphism {
    perm: Vec<usize>,
    order: u32,
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Validates that `perm` preserves the form and links no two nodes of one orbit.
pub fn validate_automorphism(
    d: &CartanDatum,
    perm: &[usize],
) -> Result<DiagramAutomorphism, CartanError> {
    let n = d.rank();
    let mut seen = vec![false; n];
    if perm.len() != n
        || perm
            .iter()
            .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
    {
        return Err(CartanError::NotPermutation(perm.to_vec()));
    }
    for i in 0..n {
        for j in 0..n {
            if d.pair(i, j) != d.pair(perm[i], perm[j]) {
                return Err(CartanError::NotFormInvariant { i, j });
            }
        }
    }
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut order = 1u32;
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let mut orbit = vec![start];
        let mut k = perm[start];
        while k != start {
            orbit.push(k);
            k = perm[k];
        }
        let len = orbit.len() as u32;
        order = order / gcd(order, len) * len;
        orbit.sort_unstable();
        for &i in &orbit {
            orbit_of[i] = orbits.len();
        }
        orbits.push(orbit);
    }
    for orbit in &orbits {
        for (a, &i) in orbit.iter().enumerate() {
            for &j in &orbit[a + 1..] {
                if d.pair(i, j) != 0 {
                    return Err(CartanError::LinkedOrbit {
                        i: d.labels()[i].clone(),
                        j: d.labels()[j].clone(),
                    });
                }
            }
        }
    }
    Ok(DiagramAutomorphism {
        perm: perm.to_vec(),
        order,
        orbits,
        orbit_of,
    })
}

impl DiagramAutomorphism {
    pub fn identity(rank: usize) -> Self {
        DiagramAutomorphism {
            perm: (0..rank).collect(),
            order: 1,
            orbits: (0..rank).map(|i| vec![i]).collect(),
            orbit_of: (0..rank).collect(),
        }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    /// Multiplicative order `𝐧`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Orbits ordered by their smallest node; each orbit sorted.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_of(&self, i: usize) -> usize {
        self.orbit_of[i]
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// `σ(β)`: the multiplicity of `σ(i)` in the image is that of `i`.
    pub fn on_weight(&self, b: &Weight) -> Weight {
        let mut m = vec![0; b.rank()];
        for (i, &n) in b.mults().iter().enumerate() {
            m[self.perm[i]] = n;
        }
        Weight::new(m)
    }

    pub fn is_stable(&self, b: &Weight) -> bool {
        self.orbits
            .iter()
            .all(|o| o.iter().all(|&i| b.get(i) == b.get(o[0])))
    }

    /// The folded weight `Σ_j m_j α_j` of a stable weight.
    pub fn fold_weight(&self, b: &Weight) -> Option<Weight> {
        self.is_stable(b)
            .then(|| Weight::new(self.orbits.iter().map(|o| b.get(o[0])).collect()))
    }

    /// Inverse of [`fold_weight`](Self::fold_weight).
    pub fn unfold_weight(&self, w: &Weight) -> Weight {
        let mut m = vec![0; self.perm.len()];
        for (j, o) in self.orbits.iter().enumerate() {
            for &i in o {
                m[i] = w.get(j);
            }
        }
        Weight::new(m)
    }

    /// Letters permuted by `σ`.
    pub fn on_word(&self, w: &[usize]) -> Vec<usize> {
        w.iter().map(|&i| self.perm[i]).collect()
    }
}

/// The folded datum on the orbit set.
pub fn fold_datum(d: &CartanDatum, s: &DiagramAutomorphism) -> CartanDatum {
    let orbits = s.orbits();
    let labels: Vec<String> = orbits
        .iter()
        .map(|o| {
            o.iter()
                .map(|&i| d.labels()[i].as_str())
                .collect::<Vec<_>>()
                .join("+")
        })
        .collect();
    let form: Vec<Vec<i64>> = orbits
        .iter()
        .map(|a| {
            orbits
                .iter()
                .map(|b| {
                    a.iter()
                        .flat_map(|&i| b.iter().map(move |&j| (i, j)))
                        .map(|(i, j)| d.pair(i, j))
                        .sum()
                })
                .collect()
        })
        .collect();
    let name = if s.is_identity() {
        d.name().to_string()
    } else {
        format!("{}/sigma", d.name())
    };
    CartanDatum::new(name, labels, form).expect("folding an admissible datum yields a datum")
}

/// A stable weight paired with its folded weight.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct StableWeight {
    pub weight: Weight,
    pub folded: Weight,
}

/// σ-stable weights of unfolded height `≤ bound`, in weight order.
pub fn stable_weights(s: &DiagramAutomorphism, bound: u32) -> Vec<StableWeight> {
    weights_up_to(s.perm().len(), bound)
        .into_iter()
        .filter_map(|w| {
            s.fold_weight(&w).map(|f| StableWeight {
                weight: w,
                folded: f,
            })
        })
        .collect()
}
