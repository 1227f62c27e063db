//! Exact formal degree and adjoint gamma-factor computations for tame
//! elliptic regular data, encoded combinatorially.

pub mod chi_data;
pub mod error;
pub mod formal_degree;
pub mod galois_roots;
pub mod mp_filtration;
pub mod qexact;
pub mod rational;
pub mod torus;
pub mod weil_gamma;
pub mod zlattice;

pub use error::{Error, Result, ValidationFailure};
pub use qexact::{exp_q, qmon_combine, qmon_from_integer, PrimePower, QMonomial};
pub use rational::Rational;
