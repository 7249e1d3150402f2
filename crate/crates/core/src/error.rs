use thiserror::Error;

/// Errors raised by validation and by the constructions in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed category data: {0}")]
    Malformed(String),

    #[error("associativity fails for h={h}, g={g}, f={f}: h(gf)={left} but (hg)f={right}")]
    AssociativityViolation { h: String, g: String, f: String, left: String, right: String },

    #[error("identity law fails at morphism {morphism}: {detail}")]
    IdentityViolation { morphism: String, detail: String },

    #[error("composite {gf} of g={g}, f={f} has the wrong boundary")]
    BoundaryViolation { g: String, f: String, gf: String },

    #[error("not functorial: {0}")]
    NotFunctorial(String),

    #[error("not natural at morphism {morphism}")]
    NotNatural { morphism: String },

    #[error("component at object {object} is not invertible")]
    NotInvertible { object: String },

    #[error("unknown builtin category `{0}`")]
    UnknownBuiltin(String),

    #[error("enumeration budget exceeded: bound {bound}, reached at least {required}")]
    EnumerationBudgetExceeded { bound: usize, required: usize },

    #[error("functor is not idempotent: {0}")]
    NotIdempotent(String),

    #[error("not an isofibration: no lift of {iso} at object {object}")]
    NotIsofibration { object: String, iso: String },

    #[error("cleavage is not normal: {0}")]
    CleavageNotNormal(String),

    #[error("equivalence witness invalid: {0}")]
    WitnessInvalid(String),

    #[error("congruence closure did not stabilize within word bound {bound}")]
    BoundExceeded { bound: usize },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
