use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch in {op}: {detail}")]
    ShapeMismatch { op: &'static str, detail: String },

    #[error("{0} is not a prime below 2^16")]
    NotPrime(u32),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid relation #{index}: {reason}")]
    InvalidRelation { index: usize, reason: String },

    #[error("not admissible within degree cap {cap}: degree {cap} still has {remaining} basis paths")]
    NotAdmissible { cap: usize, remaining: usize },

    #[error("modules or morphisms live over different algebras")]
    AlgebraMismatch,

    #[error("invalid structure-constant algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("representation violates relation #{index}")]
    RelationViolation { index: usize },

    #[error("matrix does not commute with the action of basis element {basis_element}")]
    NotMorphism { basis_element: usize },

    #[error("sequence is not composable at position {position}")]
    NotComposable { position: usize },

    #[error("algebra has no idempotent data")]
    MissingIdempotents,

    #[error("algebra has no radical data")]
    MissingRadical,

    #[error("radical computation failed its post-check: {0}")]
    RadicalCheck(String),

    #[error("could not certify a leaf of dimension {dim} as indecomposable")]
    UncertifiedLeaf { dim: usize },

    #[error("isomorphism test inconclusive (modules of dimension {dim}, Hom dimension {hom_dim})")]
    Inconclusive { dim: usize, hom_dim: usize },

    #[error("enumeration budget exceeded: {needed} candidates for dimension vector {dim_vector:?}, budget {budget}")]
    BudgetExceeded {
        needed: u128,
        budget: u128,
        dim_vector: Vec<usize>,
    },

    #[error("incomplete registry: {0}")]
    IncompleteRegistry(String),

    #[error("cutoff {cutoff} exceeded while {during}")]
    CutoffExceeded { cutoff: usize, during: &'static str },

    #[error("module is not a generator")]
    NotGenerator,

    #[error("module is not a generator-cogenerator")]
    NotGenCogen,

    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    #[error("module is not in add of the given module: {0}")]
    NotInAdd(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}
