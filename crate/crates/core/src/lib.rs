//! Quantum and equivariant quantum cohomology of type-A partial flag
//! manifolds, computed exactly.
//!
//! The ring of a flag manifold `F_{s_0,...,s_l}` is presented by the
//! coefficients of the numerator of a continued fraction in the Chern
//! polynomials of the tautological subquotient bundles. This crate builds
//! that presentation, computes a reduced Gröbner basis of the relation
//! ideal, and on top of it quantum products, the residue Poincaré pairing
//! and Gromov–Witten numbers.

pub mod equivariant;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod presentation;
pub mod ring;
pub mod verify;

pub use error::{Error, ErrorCode};
pub use groebner::{buchberger, normal_form, std_basis, GbConfig, GroebnerBasis, StdBasis};
pub use poly::{Degree, Monomial, Polynomial, UPoly, Var, VarKind, VarRegistry};
pub use presentation::{FlagType, Presentation};
pub use ring::{GwValue, MultMatrix, PairingTable, QuantumRing, ResidueMethod, RingElement};
