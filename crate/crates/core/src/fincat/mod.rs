//! Finite categories, functors and natural transformations.

mod builtin;
mod category;
mod equivalence;
mod functor;
mod ops;
pub mod raw;
mod search;
mod transformation;

pub use builtin::{builtin, chaotic, discrete, monoid, poset, thin, Builtin};
pub use category::{CatBuilder, FinCat, Mor, Morphism, Obj};
pub use equivalence::{
    classify_equivalence, is_fully_faithful_and_essentially_surjective, EquivalenceKind, EquivalenceReport,
    EquivalenceVerdict, EquivalenceWitness,
};
pub use functor::FinFunctor;
pub use ops::{coproduct, product, product_functor, Product};
pub use raw::{validate_category, RawCategory, RawFunctor, RawTransformation};
pub use search::{enumerate_functors, find_isomorphism, FunctorSearch, TransformationSearch};
pub use transformation::{transport, NatTrans};
