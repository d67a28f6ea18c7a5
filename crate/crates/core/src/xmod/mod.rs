//! Crossed modules of commutative algebras over a fixed base, their
//! braidings, morphisms, and the standard example constructions.

mod action;
mod builders;
mod morphism;
mod object;

pub use action::{validate_action, ActionTable};
pub use builders::{build_identity_bxmod, build_module_bxmod, build_square_bxmod};
pub(crate) use morphism::{is_morphism, same_object};
pub use morphism::{compose, identity_morphism, validate_morphism, BXModMorphism};
pub use object::{
    bilinearity_report, validate_braiding, validate_crossed_module, BXModObj, Braiding, CrossedModule,
    ELEMENT_CHECK_CAP,
};

