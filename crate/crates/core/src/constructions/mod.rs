//! Named constructions and closed-form bounds.

mod block;
mod conway;
mod entropy;
mod padding;
mod renaud;

pub use block::{
    block_upset_family, gap_report, level_profile, size_multiset_dominance, up_set,
    BlockUpsetParams, Dominance, GapReport, LevelCount, BLOCK_MATERIALIZE_MAX_UNIVERSE,
};
pub use conway::{conway, conway_properties, ConwayViolation};
pub use entropy::{binary_entropy, entropy_binomial_check, entropy_threshold, EntropyCheck};
pub use padding::{epsilon_bound_check, pad_family, EpsilonCheck, PadParams, Rational};
pub use renaud::{
    balanced_selection, beta, renaud_family, BetaDecomposition, BETA_MAX_K, MATERIALIZE_MAX_K,
};
