//! Exact computer algebra for the algebraic invariants of K(n)-locally
//! stably dualizable groups: Frobenius structure, primitives and
//! indecomposables, K(n)-degree, bordism-class values, and bar-complex Tor,
//! with the Ravenel-Wilson Eilenberg-MacLane algebras and finite group
//! algebras as built-in families.
//!
//! All arithmetic is exact over F_p. Modules over the graded field
//! K(n)_* = F_p[v_n, v_n^-1] are modeled as Z/L-graded F_p vector spaces
//! with L = 2(p^n - 1) and v_n normalized to 1.

pub mod algebra;
pub mod em;
pub mod error;
pub mod fp;
pub mod graded;
pub mod hopf;
pub mod tor;

pub use algebra::{
    augmentation_ideal, cyclic_group_algebra, from_presentation, group_algebra,
    ideal_generated_by, left_annihilator, module_indecomposables, CheckLevel, GradedAlgebra,
    GroupTable, Ideal, LeftModule, MonomialBasis, PresGenerator, Presentation,
};
pub use em::{
    bordism_class, compute_invariants, degree_additivity_check, kn_degree, primitive_generator,
    primitive_generator_em, rho, rw_algebra, AdditivityReport, EMAlgebra, EmFamily, EmGenerator,
    IndexSequence, InvariantReport, PipelineOptions, PrimitiveGenerator,
};
pub use error::{Error, Result};
pub use fp::{Echelon, FpMat, PrimeField, SparseVec};
pub use graded::{BasisElem, CoefficientContext, Degree, GradedMap, GradedSpace};
pub use hopf::{
    attach_hopf, dual_free_rank_one_generator, dual_hopf, frobenius_certificate,
    frobenius_certificate_with_cap, group_hopf, FrobeniusCertificate, HopfAlgebra, HopfData,
    FROBENIUS_SEARCH_CAP,
};
pub use tor::{tor_bar, TorRow, TorTable, DEFAULT_TOR_BUDGET};
