//! Error types shared across the library.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{p} is not prime")]
    NotPrime { p: u32 },

    #[error("n must be >= 1, got {n}")]
    InvalidHeight { n: u32 },

    #[error("duplicate basis label `{label}`")]
    DuplicateLabel { label: String },

    #[error("coefficient context mismatch")]
    ContextMismatch,

    #[error("map entry ({row}, {col}) violates degree homogeneity")]
    InhomogeneousEntry { row: usize, col: usize },

    #[error("dimension mismatch: {detail}")]
    DimensionMismatch { detail: String },

    #[error("truncation exponent must be >= 1 for generator `{name}`")]
    InvalidTruncation { name: String },

    #[error("relation for generator `{name}` is not degree-homogeneous")]
    InhomogeneousRelation { name: String },

    #[error("relation for generator `{name}` has a nonzero constant term, so the counit cannot kill the generator")]
    RelationConstantTerm { name: String },

    #[error("relation for generator `{name}` has a term of exponent >= truncation")]
    RelationExponentTooLarge { name: String },

    #[error("generator `{name}` has odd degree residue {residue}")]
    OddGeneratorDegree { name: String, residue: u32 },

    #[error("multiplication table is not a group: {reason}")]
    NotAGroup { reason: String },

    #[error("algebra check failed: {reason}")]
    AlgebraCheck { reason: String },

    #[error("counit is missing")]
    MissingCounit,

    #[error("action maps do not form a module: {reason}")]
    NotAModule { reason: String },

    #[error("subspace is not an ideal: {reason}")]
    NotAnIdeal { reason: String },

    #[error("Hopf axiom `{axiom}` fails on basis element `{element}`")]
    HopfAxiom { axiom: String, element: String },

    #[error("annihilator of the augmentation ideal has rank {rank}, expected 1")]
    AnnihilatorRank { rank: usize },

    #[error("no homogeneous functional induces a nondegenerate form: not a Frobenius algebra")]
    NotFrobenius,

    #[error("Frobenius search skipped: degree component has rank {component_rank}, above the cap {cap}")]
    FrobeniusSearchCap { component_rank: usize, cap: usize },

    #[error("bar complex budget exceeded: needs {needed}, budget {budget}")]
    TorBudgetExceeded { needed: u128, budget: u128 },

    #[error("index sequence is invalid for (n, q) = ({n}, {q})")]
    InvalidIndexSequence { n: u32, q: u32 },

    #[error("closed-form primitive disagrees with the annihilator computation")]
    ClosedFormMismatch,
}
