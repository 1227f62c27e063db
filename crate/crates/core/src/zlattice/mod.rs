//! Integer lattice linear algebra: Smith and Hermite forms, kernels,
//! (co)invariants of finite group actions and determinant point counts.

mod lattice;
mod matrix;
mod snf;

pub use lattice::{
    coinvariants_order, coinvariants_with_frobenius, fg_fixed_order, group_coinvariants, invariant_sublattice,
    invariant_sublattice_with, lattice_basis, rank, twisted_fixed_order, FgAbelianGroup, GroupOrder, Sublattice,
};
pub use matrix::{rank_of_vectors, rational_det, rational_inverse, IntMatrix};
pub use snf::{hermite_rows, integer_kernel, smith_normal_form, Snf};
