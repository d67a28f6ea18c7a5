//! Exactness checks for the category of braided crossed modules over a
//! fixed base: regular epimorphisms and their stability under pullback,
//! internal equivalence relations and their effectiveness, exhaustive
//! enumeration of hom-sets and congruences, and the suite that runs them all.

mod checks;
mod enumerate;
mod suite;
mod universal;

pub use checks::{
    check_effective, check_pullback_stability, is_equivalence_relation, is_regular_epi,
    regular_epi_factorization_check, RegularEpi,
};
pub use enumerate::{
    enumerate_congruences, enumerate_morphisms, enumerate_morphisms_counted, enumerate_subspaces, subspace_count,
    DEFAULT_CAP,
};
pub(crate) use suite::{construction_report, guarded};
pub use suite::{run_exactness_suite, Caps, ExactnessReport};
pub use universal::{
    certify, certify_coequaliser, certify_equaliser, certify_fibre_product, certify_relation_kernel, HomCache,
};

