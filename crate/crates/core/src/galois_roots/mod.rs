//! Finite Galois frames, tame field invariants, root data with Galois action,
//! orbit classification and the Howe filtration.

mod datum;
mod frame;
mod group;
mod howe;

pub use datum::{classify_orbits, extend_action, GRootDatum, OrbitInfo, Orbits};
pub use frame::{FieldInvariants, GaloisFrame};
pub use group::{FiniteGroup, Subgroup};
pub use howe::{
    depth_lattice_membership, filtration_from_orbit_depths, howe_filtration, is_levi_closed, levi_closure,
    orbit_depths, validate_depth_lattice, Depth, DepthLatticeCheck, HoweFiltration,
};
