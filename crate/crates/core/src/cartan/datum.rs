use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{CartanError, Weight};

/// Node labels with a symmetric integer form `(α_i, α_j)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CartanDatum {
    name: String,
    labels: Vec<String>,
    form: Vec<Vec<i64>>,
}

/// One failed axiom.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotSquare { rows: usize, expected: usize },
    LabelCount { labels: usize, rank: usize },
    DuplicateLabel { label: String },
    NotSymmetric { i: usize, j: usize },
    DiagonalNotPositiveEven { i: usize, value: i64 },
    OffDiagonalNotNonPositiveInteger { i: usize, j: usize, value: i64 },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DatumReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks shape, symmetry, `(α_i,α_i) ∈ 2Z_{>0}` and `2(α_i,α_j)/(α_i,α_i) ∈ Z_{≤0}`.
pub fn validate_datum(labels: &[String], form: &[Vec<i64>]) -> DatumReport {
    let mut v = Vec::new();
    let n = form.len();
    if labels.len() != n {
        v.push(Violation::LabelCount {
            labels: labels.len(),
            rank: n,
        });
    }
    for (k, l) in labels.iter().enumerate() {
        if labels[..k].contains(l) {
            v.push(Violation::DuplicateLabel { label: l.clone() });
        }
    }
    for row in form {
        if row.len() != n {
            v.push(Violation::NotSquare {
                rows: row.len(),
                expected: n,
            });
            return DatumReport {
                valid: false,
                violations: v,
            };
        }
    }
    for i in 0..n {
        let d = form[i][i];
        if d <= 0 || d % 2 != 0 {
            v.push(Violation::DiagonalNotPositiveEven { i, value: d });
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if j > i && form[i][j] != form[j][i] {
                v.push(Violation::NotSymmetric { i, j });
            }
            if d > 0 {
                let num = 2 * form[i][j];
                if num > 0 || num % d != 0 {
                    v.push(Violation::OffDiagonalNotNonPositiveInteger {
                        i,
                        j,
                        value: form[i][j],
                    });
                }
            }
        }
    }
    DatumReport {
        valid: v.is_empty(),
        violations: v,
    }
}

impl CartanDatum {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        form: Vec<Vec<i64>>,
    ) -> Result<Self, CartanError> {
        let report = validate_datum(&labels, &form);
        if !report.valid {
            return Err(CartanError::InvalidDatum(report.violations));
        }
        Ok(CartanDatum {
            name: name.into(),
            labels,
            form,
        })
    }

    /// Datum with labels `1..=n`.
    pub fn from_form(name: impl Into<String>, form: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let labels = (1..=form.len()).map(|k| k.to_string()).collect();
        Self::new(name, labels, form)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn form(&self) -> &[Vec<i64>] {
        &self.form
    }

    /// `(α_i, α_j)`.
    pub fn pair(&self, i: usize, j: usize) -> i64 {
        self.form[i][j]
    }

    /// `d_i = (α_i, α_i)/2`, so that `q_i = q^{d_i}`.
    pub fn d(&self, i: usize) -> u32 {
        (self.form[i][i] / 2) as u32
    }

    /// Cartan integer `a_{ij} = 2(α_i,α_j)/(α_i,α_i)`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        2 * self.form[i][j] / self.form[i][i]
    }

    pub fn linked(&self, i: usize, j: usize) -> bool {
        i != j && self.form[i][j] != 0
    }

    pub fn is_simply_laced(&self) -> bool {
        (0..self.rank()).all(|i| self.form[i][i] == 2)
    }

    /// `(β, γ)` extended bilinearly.
    pub fn pair_weights(&self, a: &Weight, b: &Weight) -> i64 {
        let mut s = 0;
        for (i, &ai) in a.mults().iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.mults().iter().enumerate() {
                s += ai as i64 * bj as i64 * self.form[i][j];
            }
        }
        s
    }

    /// `(α_i, β)`.
    pub fn pair_node_weight(&self, i: usize, b: &Weight) -> i64 {
        b.mults()
            .iter()
            .enumerate()
            .map(|(j, &n)| n as i64 * self.form[i][j])
            .sum()
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank())
            .map(|i| (0..self.rank()).map(|j| self.cartan(i, j)).collect())
            .collect()
    }

    /// Hex SHA-256 of the labels and form; independent of the display name.
    pub fn fingerprint(&self) -> String {
        let body = serde_json::json!({ "labels": self.labels, "form": self.form });
        hex::encode(Sha256::digest(body.to_string().as_bytes()))
    }
}
