//! Nerves of finite categories, truncated simplicial sets and their
//! classifying categories.

mod classifying;
mod powers;
mod sset;

pub use classifying::{
    classifying_category, classifying_functor, counit, ClassifyingCategory, RewriteSystem, DEFAULT_WORD_BOUND,
    WORD_LIMIT,
};
pub use powers::{check_powers_iso, PowersDim, PowersReport};
pub use sset::{
    check_two_coskeletal, graph_sset, nerve_truncated, product_sset, standard_simplex, CoskeletalReport, RawSSet,
    SSetMap, SSetProduct, TruncSSet, TOP_DIM,
};
