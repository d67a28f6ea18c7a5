mod common;

use std::collections::BTreeSet;

use bxmod::catalogue::{f2, f3, r2};
use bxmod::finring::*;
use bxmod::Error;
use common::*;

fn mat(rows: &[&[u32]], cols: usize) -> Mat {
    Mat::from_rows(rows.iter().map(|r| r.to_vec()).collect(), cols).unwrap()
}

fn set(vs: &[&[u32]]) -> BTreeSet<Vec<u32>> {
    vs.iter().map(|v| v.to_vec()).collect()
}

#[test]
fn rref_identity_zero_and_duplicate_rows() {
    let r = rref(&Mat::identity(2), f2());
    assert_eq!((r.matrix, r.pivots, r.rank), (Mat::identity(2), vec![0, 1], 2));
    let r = rref(&Mat::zeros(2, 2), f2());
    assert_eq!((r.matrix, r.pivots, r.rank), (Mat::zeros(2, 2), vec![], 0));
    let r = rref(&mat(&[&[1, 1], &[1, 1]], 2), f2());
    assert_eq!((r.matrix, r.pivots, r.rank), (mat(&[&[1, 1], &[0, 0]], 2), vec![0], 1));
}

#[test]
fn kernel_examples_match_enumeration() {
    for (m, expected) in [
        (Mat::zeros(2, 2), set(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])),
        (Mat::identity(2), set(&[&[0, 0]])),
        (mat(&[&[1], &[0]], 1), set(&[&[0, 0], &[0, 1]])),
    ] {
        assert_eq!(common::kernel(2, &m), expected);
        assert_eq!(members(2, &bxmod::finring::kernel(&m, f2())), expected);
    }
    let k = bxmod::finring::kernel(&mat(&[&[1], &[0]], 1), f2());
    assert_eq!(k, Submodule::span(2, &[vec![0, 1]], f2()));
}

#[test]
fn image_examples_match_enumeration() {
    let f3 = f3();
    assert!(bxmod::finring::image(&Mat::identity(3), f3).is_full());
    assert!(bxmod::finring::image(&Mat::zeros(2, 3), f3).is_trivial());
    let m = mat(&[&[1, 0], &[1, 0]], 2);
    let im = bxmod::finring::image(&m, f2());
    assert_eq!(members(2, &im), common::image(2, &m));
    assert_eq!(im, Submodule::span(2, &[vec![1, 0]], f2()));
}

#[test]
fn membership_examples() {
    let full = Submodule::full(2);
    let triv = Submodule::trivial(2);
    for v in vectors(2, 2) {
        assert!(full.contains(&v, f2()));
        assert_eq!(triv.contains(&v, f2()), v == [0, 0]);
    }
    assert!(!Submodule::span(2, &[vec![0, 1]], f2()).contains(&[1, 1], f2()));
}

#[test]
fn associativity_examples() {
    for d in 0..4 {
        assert!(validate_algebra(&FinAlgebra::zero_mult(f2(), d)).passed());
    }
    assert!(validate_algebra(&r2()).passed());
    // x² = x is still associative, so the defect used is 1·x = 1.
    assert!(validate_algebra(&r2().with_product(1, 1, vec![0, 1]).unwrap()).passed());
    let bad = validate_algebra(&r2().with_product(0, 1, vec![1, 0]).unwrap());
    assert!(bad.witness.unwrap().starts_with("basis triple (0,1,1)"));
}

#[test]
fn ideal_closure_examples_match_saturation() {
    let n2 = FinAlgebra::zero_mult(f2(), 2);
    for (a, gens) in [
        (r2(), vec![vec![0, 0]]),
        (r2(), vec![vec![0, 1]]),
        (r2(), vec![vec![1, 1]]),
        (n2.clone(), vec![vec![1, 1]]),
    ] {
        let got = ideal_closure(&a, &gens, None);
        assert_eq!(members(2, &got), common::ideal(&a, &gens, None), "gens {gens:?}");
    }
    assert!(ideal_closure(&r2(), &[vec![0, 0]], None).is_trivial());
    assert_eq!(ideal_closure(&r2(), &[vec![0, 1]], None), Submodule::span(2, &[vec![0, 1]], f2()));
    assert_eq!(ideal_closure(&n2, &[vec![1, 1]], None), Submodule::span(2, &[vec![1, 1]], f2()));
}

#[test]
fn quotient_examples() {
    let a = FinAlgebra::zero_mult(f2(), 2);
    let q = quotient_algebra(&a, &Submodule::trivial(2)).unwrap();
    assert_eq!(q.quotient.dim(), 2);
    assert_eq!(q.projection, Mat::identity(2));
    let q = quotient_algebra(&a, &Submodule::full(2)).unwrap();
    assert_eq!(q.quotient.dim(), 0);
    let q = quotient_algebra(&a, &Submodule::span(2, &[vec![0, 1]], f2())).unwrap();
    assert_eq!(q.quotient.dim(), 1);
    assert_eq!(q.projection, mat(&[&[1], &[0]], 1));
    for v in vectors(2, 2) {
        assert_eq!(q.project(&v), vec![v[0]]);
    }
}

#[test]
fn quotient_by_a_non_ideal_is_rejected() {
    // span{1} in R2 is not closed under multiplication by x
    let err = quotient_algebra(&r2(), &Submodule::span(2, &[vec![1, 0]], f2()));
    assert!(matches!(err, Err(Error::NotIdeal(_))));
}

#[test]
fn pullback_examples() {
    let a = FinAlgebra::zero_mult(f2(), 2);
    let d = FinAlgebra::zero_mult(f2(), 1);
    let proj = mat(&[&[1], &[0]], 1);
    let pb = pullback_algebra(&a, &a, &d, &proj, &proj).unwrap();
    assert_eq!(pb.algebra.dim(), 3);
    // oracle: pairs (a, b) with a0 = b0
    let expected = vectors(2, 4).into_iter().filter(|v| v[0] == v[2]).count();
    assert_eq!(members(2, &pb.carrier).len(), expected);

    let pb = pullback_algebra(&a, &a, &d, &Mat::zeros(2, 1), &Mat::zeros(2, 1)).unwrap();
    assert_eq!(pb.algebra.dim(), 4);

    // along the identity the fibre product is the graph of f
    let pb = pullback_algebra(&r2(), &r2(), &r2(), &Mat::identity(2), &Mat::identity(2)).unwrap();
    assert_eq!(pb.algebra.dim(), 2);
    assert!(validate_algebra(&pb.algebra).passed());
}

#[test]
fn element_indices() {
    let e = Elements::new(f2(), 0, 10).unwrap();
    assert_eq!(e.count(), 1);
    assert_eq!(e.index_of(&[]), 0);
    for (v, i) in [([0, 0], 0), ([1, 0], 1), ([0, 1], 2), ([1, 1], 3)] {
        assert_eq!(element_index(f2(), &v), i);
    }
    let e = Elements::new(f3(), 1, 10).unwrap();
    assert_eq!(e.iter().collect::<Vec<_>>(), vec![vec![0], vec![1], vec![2]]);
    assert!(matches!(Elements::new(f2(), 8, 10), Err(Error::Resource { .. })));
}
