//! Cartan data, admissible diagram automorphisms, and folding.

mod automorphism;
mod datum;
mod weight;

use std::path::Path;

use serde::{Deserialize, Serialize};

pub use automorphism::{
    fold_datum, stable_weights, validate_automorphism, DiagramAutomorphism, StableWeight,
};
pub use datum::{validate_datum, CartanDatum, DatumReport, Violation};
pub use weight::{weights_up_to, Weight};

#[derive(Debug, thiserror::Error)]
pub enum CartanError {
    #[error("invalid Cartan datum: {0:?}")]
    InvalidDatum(Vec<Violation>),
    #[error("{0:?} is not a permutation of the nodes")]
    NotPermutation(Vec<usize>),
    #[error("form is not invariant: (α_{i}, α_{j}) changes under σ")]
    NotFormInvariant { i: usize, j: usize },
    #[error("non-admissible: linked orbit ({i}, {j})")]
    LinkedOrbit { i: String, j: String },
    #[error("datum file: {0}")]
    Parse(String),
    #[error("unknown catalog entry {0:?}")]
    UnknownCatalog(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// On-disk datum: `{"name", "labels", "form", "sigma", "klr_params"?}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    pub name: String,
    pub labels: Vec<String>,
    pub form: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub klr_params: Option<serde_json::Value>,
}

/// A validated datum together with its automorphism.
#[derive(Clone, Debug)]
pub struct LoadedDatum {
    pub datum: CartanDatum,
    pub sigma: DiagramAutomorphism,
    pub klr_params: Option<serde_json::Value>,
}

impl DatumFile {
    pub fn parse(text: &str) -> Result<Self, CartanError> {
        serde_json::from_str(text).map_err(|e| CartanError::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self, CartanError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn load(self) -> Result<LoadedDatum, CartanError> {
        let datum = CartanDatum::new(self.name, self.labels, self.form)?;
        let sigma = match self.sigma {
            Some(p) => validate_automorphism(&datum, &p)?,
            None => DiagramAutomorphism::identity(datum.rank()),
        };
        Ok(LoadedDatum {
            datum,
            sigma,
            klr_params: self.klr_params,
        })
    }
}

impl LoadedDatum {
    /// Hex SHA-256 of the datum and automorphism.
    pub fn fingerprint(&self) -> String {
        use sha2::{Digest, Sha256};
        let body = serde_json::json!({
            "datum": self.datum.fingerprint(),
            "sigma": self.sigma.perm(),
        });
        hex::encode(Sha256::digest(body.to_string().as_bytes()))
    }
}

const CATALOG: &[(&str, &str)] = &[
    ("a2", include_str!("../../../../catalog/a2.json")),
    ("a3", include_str!("../../../../catalog/a3.json")),
    ("a3-flip", include_str!("../../../../catalog/a3-flip.json")),
    ("a5-flip", include_str!("../../../../catalog/a5-flip.json")),
    ("d4", include_str!("../../../../catalog/d4.json")),
    ("d4-rot", include_str!("../../../../catalog/d4-rot.json")),
    ("d5-flip", include_str!("../../../../catalog/d5-flip.json")),
    (
        "b2-datum",
        include_str!("../../../../catalog/b2-datum.json"),
    ),
    (
        "g2-datum",
        include_str!("../../../../catalog/g2-datum.json"),
    ),
];

/// Names of the bundled datum files.
pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|(n, _)| *n).collect()
}

/// Loads a bundled datum file by name.
pub fn catalog(name: &str) -> Result<LoadedDatum, CartanError> {
    let text = CATALOG
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| CartanError::UnknownCatalog(name.to_string()))?;
    DatumFile::parse(text)?.load()
}
