//! Exact coefficient arithmetic.

mod field;
mod laurent;
mod spec;

pub use field::{is_prime, Fp};
pub use laurent::{LaurentPoly, Monomial};
pub use spec::{ConcreteSpec, ParamSpec, QPow, RForm, SignTarget, SymbolicSpec, Tri};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cannot normalize zero")]
    ZeroNormalization,
    #[error("field elements with different moduli")]
    ModulusMismatch,
    #[error("q and r must be nonzero")]
    ZeroParameter,
    #[error("q^2 = 1, so q - q^-1 is not invertible")]
    OmegaNotInvertible,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameter spec: {0}")]
    InvalidSpec(String),
}
