//! Two-dimensional limits of finite categories: powers, strict pullbacks,
//! isocommas, pseudolimits of arrows, inserters, equifiers, idempotent
//! splittings, pullbacks along normal isofibrations and tower limits.

mod certificate;
mod flexible;
mod nif;
mod power;
mod pseudolimit;
mod pullback;
mod tower;

pub use certificate::{certify, iso_over, test_vertices, Certificate, ConeKey, LimitWitness};
pub use flexible::{equifier, inserter, split_idempotent, IdempotentSplitting};
pub use nif::{pullback_along_normal_isofibration, NifPullback};
pub use power::{functor_category, FunctorCategory, DEFAULT_BUDGET};
pub use pseudolimit::{pseudolimit_of_arrow, PseudolimitOfArrow};
pub use pullback::{isocomma, pullback_strict, Isocomma};
pub use tower::{strict_tower_limit, tower_limit, Tower, TowerLimit};
