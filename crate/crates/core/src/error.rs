//! Error type shared by all engine operations.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("unknown object id `{0}`")]
    UnknownObject(String),

    #[error("unknown morphism id `{0}`")]
    UnknownMorphism(String),

    #[error("morphisms `{g}` and `{f}` are not composable: dst({f}) != src({g})")]
    NotComposable { g: String, f: String },

    #[error("object `{0}` is not in the structured base")]
    NotInBase(String),

    #[error("malformed homotopical structure: {0}")]
    MalformedStructure(String),

    #[error("category is invalid: {0} violation(s), first: {1}")]
    InvalidCategory(usize, String),

    #[error("operation requires a passing axiom report: {0}")]
    AxiomsNotSatisfied(String),

    #[error("missing {axiom} witness for {key}")]
    MissingWitness { axiom: String, key: String },

    #[error("morphisms `{0}` and `{1}` are not a chainable witness pair")]
    WitnessChainMismatch(String, String),

    #[error("invalid groupoid `{0}`: {1}")]
    InvalidGroupoid(String, String),

    #[error("enumeration budget exceeded for hom-set ({src}, {dst}): more than {budget} candidates")]
    BudgetExceeded { src: String, dst: String, budget: usize },

    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("congruence not verified: {0}")]
    CongruenceNotVerified(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;
