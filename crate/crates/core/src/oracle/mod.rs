//! Independent oracles: Betti numbers of flag manifolds, the closed-form
//! quantum ring of projective space, and quantum Schubert calculus of
//! Grassmannians. None of them reuses the Gröbner engine.

mod poincare;
mod projective;
mod schubert;

pub use poincare::{gaussian_binomial, poincare_poly};
pub use projective::ProjectiveOracle;
pub use schubert::{jacobi_trudi, quantum_pieri, schubert_dictionary, Partition};
