mod concave;
mod ext_index;
mod jumps;
mod length;
mod primed;
mod quotient;
mod sequence;

pub use concave::is_concave;
pub use ext_index::ExtIndex;
pub use jumps::{cyclotomic, jump_length_at, torsor_points, JumpAssignment, ToralJumps};
pub use length::{length_sum, master_length_identity, orbit_interval_length, toral_interval_length, OrbitFn};
pub use primed::{check_even_periodic, periodic_sum_value, primed_sum, DiscreteFn, PeriodicPart};
pub use quotient::{ChainCertificate, LengthData};
pub use sequence::{f_from_sequence, is_admissible, is_weakly_increasing, mp_chain, step_condition_holds};
