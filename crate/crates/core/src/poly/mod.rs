//! Exact multivariate polynomials over the rationals.

mod gcd;
mod modgcd;
pub mod linalg;
mod monomial;
mod mpoly;
mod parse;
mod phi;
mod symmetric;
mod universe;

pub use gcd::{content, content_of, gcd, pseudo_remainder};
pub(crate) use gcd::coprime_by_images;
pub use monomial::{Exponents, Monomial, MonomialOrder};
pub use mpoly::{divided_difference, rat, swap_difference, MPoly};
pub use parse::{parse_poly, ParseError};
pub use phi::build_generic_phi;
pub use symmetric::{elementary_symmetric, symmetrize_to_elementary, NotSymmetric};
pub use universe::{coeff_name, coeff_names, VarRole, VarUniverse};

pub type Rational = num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("invalid variable name `{0}`")]
    BadVariableName(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("monomial order is not a permutation of the universe")]
    BadOrder,
    #[error("polynomials live in different variable universes")]
    UniverseMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact")]
    NotDivisible,
    #[error("degree must be at least 1, got {0}")]
    BadDegree(usize),
}
