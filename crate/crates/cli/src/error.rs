use qfold::canon::CanonError;
use qfold::cartan::CartanError;
use qfold::fold::FoldError;
use qfold::klr::KlrError;
use serde_json::json;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Unreadable, malformed or inadmissible input.
    #[error("{0}")]
    Input(String),
    /// A mathematical assertion failed before a report could be assembled.
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Verification(_) => 1,
        }
    }

    pub fn report(&self) -> serde_json::Value {
        let kind = match self {
            CliError::Input(_) => "invalid_input",
            CliError::Verification(_) => "verification_failure",
        };
        json!({ "schema": "qfold/error/1", "passed": false, "reason": { "kind": kind, "message": self.to_string() } })
    }
}

impl From<CartanError> for CliError {
    fn from(e: CartanError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<CanonError> for CliError {
    fn from(e: CanonError) -> Self {
        match e {
            CanonError::Io(m) => CliError::Input(m),
            e => CliError::Verification(e.to_string()),
        }
    }
}

impl From<FoldError> for CliError {
    fn from(e: FoldError) -> Self {
        match e {
            FoldError::NotPrimePower { .. }
            | FoldError::UnsupportedPrime(_)
            | FoldError::NotStable(_) => CliError::Input(e.to_string()),
            FoldError::Canon(c) => c.into(),
            e => CliError::Verification(e.to_string()),
        }
    }
}

impl From<KlrError> for CliError {
    fn from(e: KlrError) -> Self {
        CliError::Input(e.to_string())
    }
}
