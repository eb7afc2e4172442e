#![allow(dead_code)]

use hmfdef_core::newform::{Basis, EigenRow, Nebentypus};
use hmfdef_core::{FieldElement, NewformRecord, PrimeIdeal, QuadField};
use num_bigint::BigInt;

pub fn q5() -> QuadField {
    QuadField::new(5).unwrap()
}

pub fn prime(a: i64, b: i64) -> PrimeIdeal {
    q5().prime_of_generator(&FieldElement::new(a, b)).unwrap()
}

pub type Row = ((i64, i64), (i64, i64));

/// Generators (ω basis) and eigenvalues (√5 basis) of the weight (2,4),
/// level (3+ω) form over Q(√5).
pub const TABLE: [Row; 11] = [
    ((2, 0), (-10, -2)),
    ((-1, 2), (-5, 5)),
    ((3, 0), (0, -6)),
    ((4, -1), (17, -15)),
    ((4, 1), (-60, 44)),
    ((5, -1), (55, 15)),
    ((5, 1), (-20, 14)),
    ((6, -1), (0, -58)),
    ((-2, 5), (-3, -15)),
    ((-3, 5), (-118, -30)),
    ((7, 0), (-35, 91)),
];

pub fn rows(table: &[Row]) -> Vec<EigenRow> {
    let f = q5();
    table
        .iter()
        .map(|&((a, b), (x, y))| EigenRow::new(&f, prime(a, b), BigInt::from(x), BigInt::from(y), Basis::SqrtD))
        .collect()
}

pub fn form_with(table: &[Row]) -> NewformRecord {
    let f = q5();
    NewformRecord::new(
        f.clone(),
        f,
        &[2, 4],
        FieldElement::new(3, 1),
        Nebentypus::Trivial,
        rows(table),
    )
    .unwrap()
    .with_label("f")
}

pub fn fixture_form() -> NewformRecord {
    form_with(&TABLE)
}

/// Primes of `K_f = Q(√5)` over `p`, with the root of `x² − x − 1`.
pub fn lambda(p: u64, root: u64) -> PrimeIdeal {
    q5().prime_ideal(p, 1, Some(root)).unwrap()
}
