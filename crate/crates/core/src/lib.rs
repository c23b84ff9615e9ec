//! Formal concept analysis over binary contexts: concept enumeration,
//! attribute generalization (∃, ∀, α) and exact accounting of how merging
//! attributes changes the number of concepts.

pub mod bitset;
pub mod context;
pub mod cxt;
pub mod dot;
pub mod error;
pub mod families;
pub mod generalization;
pub mod lattice;
pub mod samples;

pub use bitset::BitSet;
pub use context::{AttributeSet, FormalContext, ObjectSet};
pub use cxt::{parse_cxt, parse_cxt_document, write_cxt, write_cxt_document, ContextDocument};
pub use dot::export_dot;
pub use error::{FcaError, Result};
pub use generalization::{
    check_doubling, doubling_condition, exists_bound, generalize, merge_exists, new_extents,
    pair_increase_report, phi_a, Block, GeneralizationScheme, IncreaseReport, Mode, Ratio,
};
pub use lattice::{
    brute_force_concepts, count_concepts, covering_relation, enumerate_concepts, enumerate_concepts_with,
    order_leq, Concept, ConceptLattice, CoverEdge, EnumerationLimits,
};
