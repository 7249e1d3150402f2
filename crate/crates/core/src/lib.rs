//! Finite-category computations of 2-categorical limits, isofibrations,
//! weak factorization systems and nerves.

pub mod corpus;
pub mod cosmos;
pub mod counterexamples;
pub mod error;
pub mod fibrations;
pub mod fincat;
pub mod nerve;
pub mod suite;
pub mod twolimits;

pub use error::{Error, Result};
