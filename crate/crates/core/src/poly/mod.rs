//! Exact sparse multivariate polynomials over the rationals with a weighted
//! grading and a block monomial order.

mod monomial;
mod polynomial;
mod registry;
mod text;
mod upoly;

pub use monomial::{cmp_monomials, Exponents, Monomial};
pub use polynomial::{ArithOp, Coeff, Degree, Polynomial, Term};
pub(crate) use polynomial::same_registry;
pub use registry::{OrderBlock, Var, VarKind, VarRegistry};
pub use text::{parse_coeff, parse_polynomial, parse_with, ParseError, PolynomialJson, TermJson};
pub use upoly::UPoly;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("operands live over different variable registries")]
    RegistryMismatch,
    #[error("invalid variable registry: {0}")]
    Registry(String),
    #[error("expected {expected} exponents, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("malformed rational coefficient `{0}`")]
    Coefficient(String),
}

/// Registry-checked `a op b`.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial, PolyError> {
    a.arith(b, op)
}
