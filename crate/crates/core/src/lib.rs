//! Braided crossed modules of finite commutative algebras over Z/p.
//!
//! The crate builds, over a fixed base algebra `R`, the limits and quotients
//! of the category of braided crossed `R`-modules and checks their universal
//! properties by exhaustive enumeration: equalisers, products, pullbacks,
//! kernel pairs and their coequalisers, quotients by internal equivalence
//! relations, stability of regular epimorphisms under pullback and
//! effectiveness of equivalence relations.
//!
//! Module map:
//!
//! - [`finring`]: echelon forms, kernels, finite algebras, ideals and quotients.
//! - [`xmod`]: crossed modules, braidings, morphisms and their validators.
//! - [`catops`]: categorical constructions and mediating morphisms.
//! - [`exactness`]: regular-epi, equivalence-relation and effectiveness
//!   checks, hom-set and congruence enumeration, the exactness suite.
//! - [`cli`]: the `.bxm` text format and the `bxm` command driver.
//! - [`catalogue`]: the standard example objects.
//!
//! ```
//! use bxmod::catalogue;
//! use bxmod::catops::kernel_pair;
//! use bxmod::exactness::enumerate_morphisms;
//!
//! let (m2, m1) = (catalogue::m2(), catalogue::m1());
//! let homs = enumerate_morphisms(&m2, &m1, 1 << 20).unwrap();
//! assert_eq!(homs.len(), 4);
//! let projection = &homs[2]; // (a, b) ↦ a
//! let cone = kernel_pair(projection).unwrap();
//! assert_eq!(cone.apex.dim(), 3);
//! ```

pub mod catalogue;
pub mod catops;
pub mod cli;
mod error;
pub mod exactness;
pub mod finring;
pub mod report;
pub mod xmod;

pub use error::{Error, Result};
pub use report::{Report, Status};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/finite-algebras.md")]
    mod finite_algebras {}
    #[doc = include_str!("../../../book/src/braided-crossed-modules.md")]
    mod braided_crossed_modules {}
    #[doc = include_str!("../../../book/src/limits.md")]
    mod limits {}
    #[doc = include_str!("../../../book/src/quotients.md")]
    mod quotients {}
    #[doc = include_str!("../../../book/src/exactness.md")]
    mod exactness {}
    #[doc = include_str!("../../../book/src/bxm-format.md")]
    mod bxm_format {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
