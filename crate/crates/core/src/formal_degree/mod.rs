//! The automorphic side: compact-induction degrees, Heisenberg dimensions,
//! the general degree formula with its volume assembly, and the regular case.

mod degree;
mod index_ratio;

pub use degree::{
    compact_induction_degree, dl_dimension, general_degree, heisenberg_dims, order_gl2, order_sl2, regular_degree,
    regular_depth_zero_input, volume_assembly, Degree, DepthZeroInput, GeneralDegree, RegularDegree, VolumeAssembly,
    YuShape,
};
pub use index_ratio::{coset_count, index_ratio_instance, random_index_ratio_instance, span, IndexRatioInstance};

#[cfg(test)]
mod tests;
