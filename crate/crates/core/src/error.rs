use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse ring spec `{spec}`: {reason}")]
    Parse { spec: String, reason: String },
    #[error("modulus {modulus:?} is not irreducible over F_{p}")]
    NotIrreducible { p: u32, modulus: Vec<u32> },
    #[error("budget exceeded: {what} needs {needed}, cap is {cap}")]
    BudgetExceeded { what: String, needed: u128, cap: u128 },
    #[error("element {0} is not a unit")]
    NotAUnit(u32),
    #[error("wrong ring: expected `{expected}`, got `{got}`")]
    WrongRing { expected: String, got: String },
    #[error("divisor is not monic")]
    NotMonic,
    #[error("`{0}` is not a chain ring")]
    NotAChainRing(String),
    #[error("`{0}` has prime characteristic; the chain-ring theorems need char p^c with c > 1")]
    CharIsP(String),
    #[error("`{0}` is not commutative")]
    NotCommutative(String),
    #[error("unsupported suite `{suite}`: {reason}")]
    UnsupportedSuite { suite: String, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(spec: &str, reason: impl Into<String>) -> Self {
        Error::Parse { spec: spec.to_string(), reason: reason.into() }
    }

    pub(crate) fn budget(what: impl Into<String>, needed: u128, cap: u128) -> Self {
        Error::BudgetExceeded { what: what.into(), needed, cap }
    }

    /// Errors that mean "this run could not happen" rather than "a check failed".
    pub fn is_budget_or_unsupported(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. }
                | Error::UnsupportedSuite { .. }
                | Error::NotAChainRing(_)
                | Error::CharIsP(_)
                | Error::NotCommutative(_)
        )
    }
}
