use thiserror::Error;

/// Errors raised across the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("unknown indeterminate `{0}`")]
    UnknownVariable(String),
    #[error("duplicate indeterminate `{0}`")]
    DuplicateVariable(String),
    #[error("too many {kind} indeterminates ({count}, limit {limit})")]
    RingTooLarge {
        kind: &'static str,
        count: usize,
        limit: usize,
    },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("element is not parity-homogeneous")]
    Inhomogeneous,
    #[error("element is not homogeneous with respect to the grading")]
    InhomogeneousDegree,
    #[error("realization mismatch: {0}")]
    Realization(String),
    #[error("unresolved generator `{0}`")]
    UnresolvedGenerator(String),
    #[error("not an eigenvector of `{0}`")]
    NotEigenvector(String),
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("unknown grading `{r}` for `{algebra}`")]
    UnknownGrading { algebra: String, r: String },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("matrix format mismatch: {0}")]
    Format(String),
    #[error("degree window too small: {0}")]
    Window(String),
}

pub type Result<T> = std::result::Result<T, Error>;
