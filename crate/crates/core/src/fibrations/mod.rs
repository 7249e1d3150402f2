//! Isofibrations, cleavages and the (injective equivalence, normal
//! isofibration) weak factorization system.

mod classify;
mod cleavage;
mod leibniz;
mod minimal;
mod wfs;

pub use classify::{
    build_normal_cleavage, classify_fibration, is_cartesian, is_discrete_isofibration, is_representable_isofibration,
    FibrationFlags, FibrationReport, LiftFailure,
};
pub use cleavage::{Cleavage, LiftChoice};
pub use leibniz::{compute_wf, leibniz_power, LeibnizPower, Wf, WfSummary};
pub use minimal::{minimal_retract_witness, RetractWitness};
pub use wfs::{factorize_wfs, solve_lifting, Factorization, LiftingProblem};
