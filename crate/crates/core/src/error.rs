use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("load check failed: {0}")]
    Load(String),
    #[error("no coideal certificate for relation {index}: {relation}")]
    NoCertificate { index: usize, relation: String },
    #[error("refusing to check phi on relations without a coideal certificate")]
    CertificateRequired,
    #[error("rewriting exceeded the step budget on {0}")]
    RewriteBudget(String),
    #[error("relation has no rewritable leading term: {0}")]
    NoLeadingTerm(String),
    #[error("missing action table entry: {0}")]
    MissingAction(String),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
