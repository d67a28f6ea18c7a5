//! Fixed example objects shared by tests, the guide and the shipped
//! `catalogue.bxm` file.
//!
//! | name      | base | carrier                         | boundary          |
//! |-----------|------|---------------------------------|-------------------|
//! | `id_r2`   | R2   | R2                              | identity          |
//! | `sq_r2`   | R2   | R2² = R2                        | inclusion         |
//! | `ext_r2`  | R2   | R2 ⊕ Z/2 (kernel annihilated)   | first projection  |
//! | `id_z3`   | Z/3  | Z/3                             | identity          |
//! | `sq_r3c`  | R3c  | span{x²}                        | inclusion         |
//! | `id_n2`   | N2   | N2                              | identity          |
//! | `m1`      | N2   | Z/2, zero multiplication        | zero              |
//! | `m2`      | N2   | (Z/2)², zero multiplication     | zero              |
//! | `ext_n2`  | N2   | N2 ⊕ Z/2, zero multiplication   | first projection  |
//!
//! R2 = Z/2[x]/(x²) on the basis (1, x); R3c = span{x, x²} ⊂ Z/2[x]/(x³);
//! N2 = (Z/2)² with zero multiplication. A module with zero boundary only
//! satisfies BCM1 over a base with zero multiplication, which is why `m1`
//! and `m2` live over N2.

use std::sync::Arc;

use crate::finring::{FinAlgebra, Mat, PrimeField};
use crate::xmod::{build_identity_bxmod, build_module_bxmod, build_square_bxmod, ActionTable, BXModObj, Braiding};

pub fn f2() -> PrimeField {
    PrimeField::new(2).expect("2 is prime")
}

pub fn f3() -> PrimeField {
    PrimeField::new(3).expect("3 is prime")
}

/// Z/2[x]/(x²) on the basis (1, x).
pub fn r2() -> FinAlgebra {
    FinAlgebra::new(f2(), 2, vec![vec![1, 0], vec![0, 1], vec![0, 0]]).expect("R2 table")
}

/// Z/3 as a one-dimensional algebra.
pub fn z3() -> FinAlgebra {
    FinAlgebra::new(f3(), 1, vec![vec![1]]).expect("Z/3 table")
}

/// span{x, x²} inside Z/2[x]/(x³); non-unital.
pub fn r3c() -> FinAlgebra {
    FinAlgebra::new(f2(), 2, vec![vec![0, 1], vec![0, 0], vec![0, 0]]).expect("R3c table")
}

/// (Z/2)² with zero multiplication.
pub fn n2() -> FinAlgebra {
    FinAlgebra::zero_mult(f2(), 2)
}

pub fn id_r2() -> Arc<BXModObj> {
    Arc::new(build_identity_bxmod(&r2()).expect("id_r2 is valid"))
}

pub fn id_z3() -> Arc<BXModObj> {
    Arc::new(build_identity_bxmod(&z3()).expect("id_z3 is valid"))
}

pub fn id_n2() -> Arc<BXModObj> {
    Arc::new(build_identity_bxmod(&n2()).expect("id_n2 is valid"))
}

pub fn sq_r2() -> Arc<BXModObj> {
    Arc::new(build_square_bxmod(&r2()).expect("sq_r2 is valid"))
}

pub fn sq_r3c() -> Arc<BXModObj> {
    Arc::new(build_square_bxmod(&r3c()).expect("sq_r3c is valid"))
}

/// A zero-multiplication module of dimension `dim` over N2 with zero action.
pub fn module_over_n2(dim: usize) -> Arc<BXModObj> {
    let action = ActionTable::zero(n2(), FinAlgebra::zero_mult(f2(), dim));
    Arc::new(build_module_bxmod(&n2(), &action).expect("modules over N2 are valid"))
}

pub fn m1() -> Arc<BXModObj> {
    module_over_n2(1)
}

pub fn m2() -> Arc<BXModObj> {
    module_over_n2(2)
}

/// `B ⊕ Z/2 → B` for a base `B`: the second summand is a square-zero
/// kernel killed by the action, and the braiding is `{s, t} = (st, 0)`.
pub fn extension_of(base: &FinAlgebra) -> Arc<BXModObj> {
    let f = base.field();
    let d = base.dim();
    let pad = |v: &[u32]| {
        let mut out = v.to_vec();
        out.push(0);
        out
    };
    let carrier = FinAlgebra::from_fn(f, d + 1, |i, j| {
        if i < d && j < d {
            pad(base.basis_product(i, j))
        } else {
            vec![0; d + 1]
        }
    })
    .expect("extension table");
    let action = ActionTable::from_fn(base.clone(), carrier.clone(), |i, j| {
        if j < d {
            pad(base.basis_product(i, j))
        } else {
            vec![0; d + 1]
        }
    })
    .expect("extension action");
    let boundary = Mat::from_fn(d + 1, d, |i, j| u32::from(i == j));
    let braiding = Braiding::from_fn(base, &carrier, |s, t| pad(&base.mul(s, t))).expect("extension braiding");
    let obj = BXModObj::from_parts(boundary, action, braiding).expect("extension shapes");
    assert!(obj.validate().passed(), "extension objects satisfy every axiom");
    Arc::new(obj)
}

pub fn ext_r2() -> Arc<BXModObj> {
    extension_of(&r2())
}

pub fn ext_n2() -> Arc<BXModObj> {
    extension_of(&n2())
}

/// Objects over N2, terminal first.
pub fn catalogue_n2() -> Vec<(String, Arc<BXModObj>)> {
    vec![
        ("id_n2".into(), id_n2()),
        ("m1".into(), m1()),
        ("m2".into(), m2()),
        ("ext_n2".into(), ext_n2()),
    ]
}

/// Objects over R2, terminal first.
pub fn catalogue_r2() -> Vec<(String, Arc<BXModObj>)> {
    vec![("id_r2".into(), id_r2()), ("sq_r2".into(), sq_r2()), ("ext_r2".into(), ext_r2())]
}
