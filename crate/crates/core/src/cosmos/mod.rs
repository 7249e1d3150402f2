//! The 2-cosmos axioms over a finite fragment, and the normal isofibration
//! property for internal categories in small toposes.

mod fragment;
mod nip;

pub use fragment::{
    check_fragment, label, leibniz_generators, AxiomReport, ClauseResult, CosmosFragment, IsofibrationClass,
    DEFAULT_TOWER_BOUND,
};
pub use nip::{nip_square_filler, NipCounterexample, NipOutcome, SetMorphism, SetObject, Topos, MAX_SIZE_BOUND};
