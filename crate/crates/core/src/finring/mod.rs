//! Linear algebra over Z/p and finite commutative algebras given by
//! structure constants: echelon forms, kernels and images, ideals,
//! quotients, products and fibre products.

mod algebra;
mod field;
mod matrix;
mod submodule;

pub use algebra::{
    direct_product, element_index, ideal_closure, multiplicativity_violation, pullback_algebra, quotient_algebra,
    validate_algebra, Elements, FinAlgebra, PullbackAlgebra, QuotientPresentation, Subalgebra,
};
pub use field::{is_zero, PrimeField};
pub use matrix::{image, kernel, rref, Mat, Rref};
pub use submodule::Submodule;

#[cfg(test)]
mod tests;
