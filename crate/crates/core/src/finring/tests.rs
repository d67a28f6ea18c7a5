use super::*;

fn f2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

/// Z/2[x]/(x²) on the basis (1, x).
fn r2() -> FinAlgebra {
    FinAlgebra::new(f2(), 2, vec![vec![1, 0], vec![0, 1], vec![0, 0]]).unwrap()
}

#[test]
fn zero_mult_is_associative() {
    for d in 0..4 {
        assert!(validate_algebra(&FinAlgebra::zero_mult(f2(), d)).passed());
    }
}

#[test]
fn dual_numbers_are_associative() {
    assert!(validate_algebra(&r2()).passed());
}

#[test]
fn broken_dual_numbers_fail_at_first_bad_triple() {
    // 1·x = 1 breaks (b0 b1) b1 = 1·x = 1 against b0 (b1 b1) = 1·0 = 0.
    let bad = r2().with_product(0, 1, vec![1, 0]).unwrap();
    let report = validate_algebra(&bad);
    assert!(!report.passed());
    assert!(report.witness.unwrap().starts_with("basis triple (0,1,1)"));
}

#[test]
fn idempotent_x_is_still_associative() {
    // x² = x gives Z/2[x]/(x² - x), a quotient of a polynomial ring.
    assert!(validate_algebra(&r2().with_product(1, 1, vec![0, 1]).unwrap()).passed());
}

#[test]
fn malformed_tables_are_structural_errors() {
    assert!(matches!(
        FinAlgebra::new(f2(), 2, vec![vec![1, 0], vec![0, 1]]),
        Err(crate::Error::Structural(_))
    ));
    assert!(matches!(
        FinAlgebra::new(f2(), 1, vec![vec![1, 0]]),
        Err(crate::Error::Structural(_))
    ));
    assert!(matches!(FinAlgebra::new(f2(), 1, vec![vec![2]]), Err(crate::Error::Structural(_))));
}
