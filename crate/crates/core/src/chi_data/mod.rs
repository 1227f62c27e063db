//! χ-data on finite Weil models: characters of root stabilizers, the
//! Langlands–Shelstad cocycle r_χ and its compatibility with base change.

mod character;
mod chi;
mod cocycle;
mod models;
#[cfg(test)]
mod tests;

pub use character::{all_characters, generators, transfer_factors, transfer_value, Character};
pub use chi::{
    admissible_characters, base_change_chi, carrier, random_chi, restrict_datum, root_classes, stabilizer,
    stabilizer_pm, validate_chi, BaseChanged, ChiData, ChiDiagnostics,
};
pub use cocycle::{
    compare_on_subgroup, compatible_choices, r_chi_eval, vanishes_where_chi_trivial, verify_base_change,
    BaseChangeReport, BaseChangeWitness, ClassChoice, CompatibleChoices, DualTorusElement, SectionChoices,
};
pub use models::{
    a2_roots, bundled_models, frames_on, random_chi_instance, s3_a2, z4_a1, z4_a1_ramified, z8_a1, z8_rot_a1a1,
    ChiInstance, ChiModel,
};
