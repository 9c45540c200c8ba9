//! Stock Cayley tables.

use crate::finite::{CayleyTable, FiniteError, MAX_ORDER};

/// The one-element gyrogroup.
pub fn trivial() -> CayleyTable {
    cyclic(1).unwrap()
}

/// The cyclic group `Z_n`, `x ⊕ y = x + y mod n`.
pub fn cyclic(n: usize) -> Result<CayleyTable, FiniteError> {
    if n == 0 {
        return Err(FiniteError::EmptyTable);
    }
    if n > MAX_ORDER {
        return Err(FiniteError::OrderTooLarge { order: n, max: MAX_ORDER });
    }
    let rows: Vec<Vec<usize>> = (0..n).map(|r| (0..n).map(|c| (r + c) % n).collect()).collect();
    CayleyTable::from_rows(&rows)
}

/// The Klein four-group: xor on two bits.
pub fn klein_four() -> CayleyTable {
    let rows: Vec<Vec<usize>> = (0..4).map(|r| (0..4).map(|c| r ^ c).collect()).collect();
    CayleyTable::from_rows(&rows).unwrap()
}

/// The symmetric group on three letters; elements are the permutations of
/// `{0, 1, 2}` in lexicographic order ([0,1,2], [0,2,1], [1,0,2], [1,2,0],
/// [2,0,1], [2,1,0]), composed as `(a ∘ b)(i) = a[b[i]]`.
pub fn sym3() -> CayleyTable {
    const PERMS: [[usize; 3]; 6] =
        [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index_of = |p: [usize; 3]| PERMS.iter().position(|q| *q == p).unwrap();
    let rows: Vec<Vec<usize>> = PERMS
        .iter()
        .map(|a| {
            PERMS
                .iter()
                .map(|b| index_of([a[b[0]], a[b[1]], a[b[2]]]))
                .collect()
        })
        .collect();
    CayleyTable::from_rows(&rows).unwrap()
}
