//! Exact and numerical tooling for based rings with duality, their
//! gradings, and the modular data that realizes them.

pub mod canonical;
pub mod classify;
pub mod cyclotomic;
pub mod double;
pub mod error;
pub mod fixtures;
pub mod grading;
pub mod group;
pub mod metric;
pub mod chartab;
pub mod modular;
pub mod ring;
pub mod search;

pub use canonical::{canonical_form, canonical_form_with_cap, CanonicalForm, CanonicalKey};
pub use chartab::{character_table, CharacterTable, CHARACTER_GROUP_CAP, ORTHOGONALITY_TOL};
pub use double::{
    double_modular_data, group_analysis, DoubleData, DoubleLabel, GroupAnalysis,
    DOUBLE_GROUP_CAP, DOUBLE_TOLERANCE,
};
pub use classify::{
    apply_elimination_rules, classify, enumerate_type_signatures, enumerate_types,
    graded_refinement, CaseReport, CaseVerdict, Classification, DimensionProfile, Overall,
    RefinementOutcome, Rule, Shape, SurvivorFamily, TypeSignature, Verdict,
};
pub use error::{Error, Result};
pub use grading::{
    component_dimensions, graded_twist, universal_grading, validate_cochain, CochainReport,
    Grading, PointedCochain,
};
pub use group::FiniteGroup;
pub use ring::{
    adjoint_of, adjoint_subbasis, fp_dimensions, invertibles, is_nilpotent, pointed_ring,
    restrict, Axiom, AxiomCheck, DimensionVector, FusionRing, IntegralDims, NilpotencyReport,
    PointedPart, SubBasis, ValidationReport,
};
pub use cyclotomic::{root_of_unity, Complex, RootSum};
pub use metric::{metric_group_data, MetricGroup};
pub use modular::{
    fusion_subcategory_lattice, fusion_subcategory_lattice_with_cap, gauss_sums,
    twist_equation_check, verify_modular, verify_modular_with, verlinde_fusion,
    verlinde_fusion_with, CertificateOutcome, GaussSums, GroupTheoreticalCertificate,
    ModularAnalysis, ModularCheck, ModularCheckKind, ModularData, ModularReport,
    DEFAULT_TOLERANCE, LATTICE_RANK_CAP, TWIST_ORDER_CAP, VERLINDE_RESIDUAL_BOUND,
};
pub use search::{
    complete_fusion_rings, derive_forced_entries, DedupPolicy, GradingSpec, PartialRing,
    SearchResult, SearchSpec, SEARCH_NODE_CAP,
};
