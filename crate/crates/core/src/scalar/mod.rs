//! Exact coefficient arithmetic.
//!
//! [`Laurent`] is the coefficient ring: Laurent polynomials with rational
//! coefficients in a base variable `v` (with `q = v^2` by default, so
//! `q^(1/2)` is representable) and finitely many invertible formal
//! parameters. [`Scalar`] is its fraction field, restricted to denominators
//! in `v` alone, which is enough for every quotient the engine forms.

mod context;
mod frac;
mod json;
mod laurent;
mod parse;
mod upoly;

pub use context::{Ctx, Exps, ParameterContext};
pub use frac::Scalar;
pub use json::{ContextJson, ScalarJson, TermJson};
pub use laurent::Laurent;
pub use parse::parse_scalar;

/// The coefficient ring under its longer name.
pub type LaurentScalar = Laurent;

#[cfg(test)]
pub(crate) use laurent::big;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("scalars belong to different parameter contexts")]
    ContextMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` is declared twice or is reserved")]
    DuplicateVariable(String),
    #[error("cannot divide by `{0}`: only monomial multiples of polynomials in q are invertible")]
    NonUnivariateDivisor(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
}
