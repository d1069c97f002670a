//! Union-closed set families: exact bit-mask representation, structural
//! analysis, named constructions, and an exhaustive search for φ(n).

pub mod canon;
pub mod constructions;
mod error;
mod family;
pub mod format;
mod mask;
pub mod search;
pub mod structure;

pub use canon::{canonical_form, canonical_masks, is_isomorphic};
pub use error::{Result, UcsError};
pub use family::{close_under_union, ConjectureVerdict, ElementMap, Family, FrequencyTable};
pub use format::{parse_family, serialize_family, FormatError};
pub use mask::{Element, Elements, SetMask, MAX_UNIVERSE};
pub use search::{phi_naive, phi_search, verify_phi_table, SearchConfig, SearchResult, SearchStats};
