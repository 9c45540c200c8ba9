//! Shared finite fixtures for integration tests.

#![allow(dead_code)]

use gyrolab::finite::{product_gyrogroup, verify_gyrogroup, CayleyTable, FiniteGyrogroup};
use gyrolab::tables;

/// The named base tables every structural test exercises.
pub fn base_tables() -> Vec<(&'static str, CayleyTable)> {
    vec![
        ("z2", tables::cyclic(2).unwrap()),
        ("z3", tables::cyclic(3).unwrap()),
        ("z4", tables::cyclic(4).unwrap()),
        ("k4", tables::klein_four()),
        ("z5", tables::cyclic(5).unwrap()),
        ("s3", tables::sym3()),
    ]
}

/// Base tables plus every ordered pairwise product, verified and wrapped.
///
/// Covers orders 2..=36; callers filter by order.
pub fn fixture_family() -> Vec<(String, FiniteGyrogroup)> {
    let bases = base_tables();
    let mut out: Vec<(String, FiniteGyrogroup)> = bases
        .iter()
        .map(|(name, t)| (name.to_string(), FiniteGyrogroup::verify(t.clone()).unwrap()))
        .collect();
    for (na, _) in &bases {
        for (nb, _) in &bases {
            let a = out.iter().find(|(n, _)| n == na).unwrap().1.clone();
            let b = out.iter().find(|(n, _)| n == nb).unwrap().1.clone();
            let prod = product_gyrogroup(&a, &b).unwrap();
            let name = format!("{na}x{nb}");
            out.push((name, FiniteGyrogroup::verify(prod).unwrap()));
        }
    }
    out
}

/// Fixture family restricted to tables of order at most `max`.
pub fn fixture_family_up_to(max: usize) -> Vec<(String, FiniteGyrogroup)> {
    fixture_family()
        .into_iter()
        .filter(|(_, g)| g.order() <= max)
        .collect()
}

/// The smallest proper gyrogroup: order 8, non-associative, with 24
/// nontrivial gyration pairs. Found by exhaustive search (first canonical
/// table of order 8 that fails the associativity scan); all eight gyro laws
/// verify exhaustively.
pub fn g8_rows() -> Vec<Vec<usize>> {
    vec![
        vec![0, 1, 2, 3, 4, 5, 6, 7],
        vec![1, 0, 3, 2, 5, 4, 7, 6],
        vec![2, 3, 0, 1, 6, 7, 4, 5],
        vec![3, 2, 1, 0, 7, 6, 5, 4],
        vec![4, 5, 6, 7, 0, 1, 2, 3],
        vec![5, 4, 7, 6, 1, 0, 3, 2],
        vec![6, 7, 4, 5, 3, 2, 1, 0],
        vec![7, 6, 5, 4, 2, 3, 0, 1],
    ]
}

/// The proper order-8 gyrogroup, verified.
pub fn proper_g8() -> FiniteGyrogroup {
    let g = FiniteGyrogroup::verify(CayleyTable::from_rows(&g8_rows()).unwrap()).unwrap();
    assert!(!g.is_group());
    g
}

/// Order-16 proper gyrogroup: the direct product of the order-8 one with Z2.
pub fn proper_g16() -> FiniteGyrogroup {
    let z2 = FiniteGyrogroup::verify(tables::cyclic(2).unwrap()).unwrap();
    let t = product_gyrogroup(&proper_g8(), &z2).unwrap();
    FiniteGyrogroup::verify(t).unwrap()
}

/// Order-5 Latin square with identity 0 and two-sided inverses that is not
/// a gyrogroup: every gyro law from left gyroassociativity onward fails.
pub fn loop5_rows() -> Vec<Vec<usize>> {
    vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 3, 4, 2],
        vec![2, 4, 0, 1, 3],
        vec![3, 2, 4, 0, 1],
        vec![4, 3, 1, 2, 0],
    ]
}

/// The loop fixture as a validated `CayleyTable`.
pub fn loop5_table() -> CayleyTable {
    let t = CayleyTable::from_rows(&loop5_rows()).unwrap();
    assert!(!verify_gyrogroup(&t).all_passed());
    t
}
