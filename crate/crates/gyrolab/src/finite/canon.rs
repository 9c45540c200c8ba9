//! Canonical representatives of tables under relabeling.

use super::{CayleyTable, FiniteError};

/// Relabeling candidates grow factorially; canonicalization is only used on
/// search-sized tables.
pub const MAX_CANON_ORDER: usize = 9;

/// The lexicographically smallest table obtainable by relabeling, among all
/// relabelings sending the identity to 0.
///
/// Two tables are isomorphic exactly when their canonical forms are equal,
/// so deduplicating by canonical form yields one representative per
/// isomorphism class, and canonicalizing a canonical form changes nothing.
pub fn canonical_form(t: &CayleyTable) -> Result<CayleyTable, FiniteError> {
    let n = t.order();
    if n > MAX_CANON_ORDER {
        return Err(FiniteError::OrderTooLarge { order: n, max: MAX_CANON_ORDER });
    }
    let e = t.identity().ok_or(FiniteError::NoIdentity)?;

    // perm maps old labels to new; the identity always goes to 0.
    let mut perm = vec![0u8; n];
    let mut others: Vec<u8> = (0..n as u8).filter(|&x| x as usize != e).collect();
    let mut best: Option<Vec<u8>> = None;
    let mut candidate = vec![0u8; n * n];
    for_each_permutation(&mut others, &mut |arrangement| {
        perm[e] = 0;
        for (i, &old) in arrangement.iter().enumerate() {
            perm[old as usize] = (i + 1) as u8;
        }
        for a in 0..n {
            for b in 0..n {
                let dest = perm[a] as usize * n + perm[b] as usize;
                candidate[dest] = perm[t.get(a, b)];
            }
        }
        match &best {
            Some(b) if candidate >= *b => {}
            _ => best = Some(candidate.clone()),
        }
    });
    let cells = best.expect("at least the identity relabeling exists");
    Ok(CayleyTable { n, cells })
}

/// Heap's algorithm; calls `f` with each arrangement of `items`.
fn for_each_permutation<T: Copy>(items: &mut [T], f: &mut impl FnMut(&[T])) {
    fn heap<T: Copy>(k: usize, items: &mut [T], f: &mut impl FnMut(&[T])) {
        if k <= 1 {
            f(items);
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, items, f);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
        heap(k - 1, items, f);
    }
    if items.is_empty() {
        f(items);
        return;
    }
    let k = items.len();
    heap(k, items, f);
}
