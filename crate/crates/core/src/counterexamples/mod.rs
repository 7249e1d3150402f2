//! Named, reproducible witnesses built from the rest of the crate.

mod arrows;
mod catalog;

pub use arrows::{classify_arrow_fibration, ArrowFibrationFlags, ArrowMorphism};
pub use catalog::{
    fy_square, run_counterexample, Claim, CounterexampleName, FyFamily, Witness, FY_MAX_SIZE, FY_MAX_THRESHOLD,
};
