//! The Galois side: conductors, |ε|, L-values of the toral part, the toral
//! and root γ-factors, the component group and their assembly.

mod conductor;
mod gamma;
mod inductivity;

pub use conductor::{
    conductor_char, conductor_induction_general, conductor_tame_induction, conductor_tame_via_discriminant, eps_abs,
    tame_extension, CharDescriptor,
};
pub use gamma::{
    component_group_order, galois_side, psi_depth, root_gamma_abs, toral_gamma_abs, GaloisSide, OrbitConductor,
    RootGamma, ToralGamma,
};
pub use inductivity::{induced_sign_representation, l_polynomial, l_polynomial_of_character};

#[cfg(test)]
mod tests;
