use thiserror::Error;

/// Statistics reported when a coset enumeration runs out of budget.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct EnumStats {
    pub cosets_defined: u64,
    pub cosets_collapsed: u64,
    pub live_cosets: u64,
    pub budget: u64,
}

#[derive(Debug, Error)]
pub enum SchurkitError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("presentation failed consistency check ({failures} overlap(s) disagree)")]
    Inconsistent { failures: usize },

    #[error("unknown catalog family `{0}`")]
    UnknownCatalog(String),

    #[error("invalid catalog parameters: {0}")]
    InvalidParams(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("coset enumeration budget exceeded ({} cosets defined, budget {})", .0.cosets_defined, .0.budget)]
    BudgetExceeded(EnumStats),

    #[error("element belongs to a different presentation")]
    ForeignElement,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("weight is undefined for the identity element")]
    IdentityWeight,

    #[error("unknown lemma id `{0}`")]
    UnknownLemma(String),

    #[error("malformed identity template: {0}")]
    MalformedTemplate(String),

    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
