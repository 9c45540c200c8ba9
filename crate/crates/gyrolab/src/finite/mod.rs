//! Finite gyrogroups given by Cayley tables.
//!
//! A table of order `n` stores `x ⊕ y` for `x, y` in `{0, .., n-1}`.
//! [`verify_gyrogroup`] checks every law exhaustively and reports the first
//! counterexample per law; [`FiniteGyrogroup`] wraps a table that passed, so
//! downstream machinery (subgyrogroups, cosets, covers) can rely on the
//! axioms instead of re-checking them.

mod canon;
mod search;
mod subsets;

pub use canon::{canonical_form, MAX_CANON_ORDER};
pub use search::{search_gyrogroups, SearchOptions, SearchOutcome, DEFAULT_MAX_SEARCH_ORDER, HARD_MAX_SEARCH_ORDER};
pub use subsets::{
    coset_partition, enumerate_subgyrogroups, enumerate_subgyrogroups_with_limit,
    is_l_subgyrogroup, is_subgyrogroup, left_translate, set_oplus, star_of_point,
    subgyro_closure, translate_cover, CosetPartition, PartitionValidation, Subset,
    SubgyrogroupInfo, DEFAULT_ENUMERATION_LIMIT, MAX_SUBSET_ORDER,
};

use thiserror::Error;

use crate::axioms::{AxiomReport, CheckMode, Law, LawReport, LawStatus, Sample};
use crate::model::GyroModel;

/// Largest table order; entries are stored as `u8`.
pub const MAX_ORDER: usize = 256;

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum FiniteError {
    #[error("table must have at least one element")]
    EmptyTable,
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRow { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is out of range for order {order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no unique two-sided inverse")]
    NotInvertible(usize),
    #[error("table is not a gyrogroup: law {law} fails")]
    NotAGyrogroup { law: &'static str },
    #[error("subset operations support order at most {max}, table has order {order}")]
    SubsetOrderTooLarge { order: usize, max: usize },
    #[error("element {element} is out of range for order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("subset must be non-empty")]
    EmptySubset,
    #[error("subset is not a subgyrogroup")]
    NotASubgyrogroup,
    #[error("subgyrogroup is not an L-subgyrogroup; pass allow_non_l to partition anyway")]
    NotLSubgyrogroup,
    #[error("subset must contain the identity {identity}")]
    IdentityNotInSubset { identity: usize },
    #[error("point {point} lies in no set of the cover")]
    PointUncovered { point: usize },
}

/// A (not necessarily gyrogroup) binary operation on `{0, .., n-1}`,
/// row-major: `get(a, b)` is the entry in row `a`, column `b`.
///
/// Ordering is order-then-cells lexicographic, which is what canonical-form
/// deduplication sorts by.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CayleyTable {
    n: usize,
    cells: Vec<u8>,
}

impl CayleyTable {
    pub fn new(n: usize, cells: Vec<u8>) -> Result<CayleyTable, FiniteError> {
        if n == 0 {
            return Err(FiniteError::EmptyTable);
        }
        if n > MAX_ORDER {
            return Err(FiniteError::OrderTooLarge { order: n, max: MAX_ORDER });
        }
        if cells.len() != n * n {
            return Err(FiniteError::RaggedRow { row: 0, len: cells.len(), expected: n * n });
        }
        for (i, &v) in cells.iter().enumerate() {
            if v as usize >= n {
                return Err(FiniteError::EntryOutOfRange {
                    row: i / n,
                    col: i % n,
                    value: v as usize,
                    order: n,
                });
            }
        }
        Ok(CayleyTable { n, cells })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<CayleyTable, FiniteError> {
        let n = rows.len();
        if n == 0 {
            return Err(FiniteError::EmptyTable);
        }
        if n > MAX_ORDER {
            return Err(FiniteError::OrderTooLarge { order: n, max: MAX_ORDER });
        }
        let mut cells = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(FiniteError::RaggedRow { row: r, len: row.len(), expected: n });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(FiniteError::EntryOutOfRange { row: r, col: c, value: v, order: n });
                }
                cells.push(v as u8);
            }
        }
        Ok(CayleyTable { n, cells })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b] as usize
    }

    #[inline]
    pub(crate) fn at(&self, a: u8, b: u8) -> u8 {
        self.cells[a as usize * self.n + b as usize]
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|r| (0..self.n).map(|c| self.get(r, c)).collect())
            .collect()
    }

    /// The unique two-sided identity, if one exists.
    pub fn identity(&self) -> Option<usize> {
        let mut found = None;
        for e in 0..self.n {
            if (0..self.n).all(|x| self.get(e, x) == x && self.get(x, e) == x) {
                if found.is_some() {
                    return None;
                }
                found = Some(e);
            }
        }
        found
    }

    /// Two-sided inverse of every element relative to `e`; errors on the
    /// first element without a unique one.
    pub fn two_sided_inverses(&self, e: usize) -> Result<Vec<u8>, FiniteError> {
        let mut inv = Vec::with_capacity(self.n);
        for x in 0..self.n {
            let mut unique = None;
            for y in 0..self.n {
                if self.get(x, y) == e && self.get(y, x) == e {
                    if unique.is_some() {
                        return Err(FiniteError::NotInvertible(x));
                    }
                    unique = Some(y as u8);
                }
            }
            inv.push(unique.ok_or(FiniteError::NotInvertible(x))?);
        }
        Ok(inv)
    }

    /// The gyration `gyr[a, b]` computed directly from the raw table. Fails
    /// when the table lacks the identity or inverses the definition needs;
    /// for verified tables use [`FiniteGyrogroup::gyr_map`].
    pub fn gyr_raw(&self, a: usize, b: usize) -> Result<GyrationMap, FiniteError> {
        let n = self.n;
        if a >= n {
            return Err(FiniteError::ElementOutOfRange { element: a, order: n });
        }
        if b >= n {
            return Err(FiniteError::ElementOutOfRange { element: b, order: n });
        }
        let e = self.identity().ok_or(FiniteError::NoIdentity)?;
        let inv = self.two_sided_inverses(e)?;
        let ab_inv = inv[self.get(a, b)] as usize;
        let perm = (0..n)
            .map(|z| self.cells[ab_inv * n + self.get(a, self.get(b, z))])
            .collect();
        Ok(GyrationMap { a: a as u8, b: b as u8, perm })
    }
}

/// The permutation `z ↦ gyr[a, b](z)` of a finite carrier.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GyrationMap {
    a: u8,
    b: u8,
    perm: Vec<u8>,
}

impl GyrationMap {
    pub fn a(&self) -> usize {
        self.a as usize
    }

    pub fn b(&self) -> usize {
        self.b as usize
    }

    pub fn apply(&self, z: usize) -> usize {
        self.perm[z] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(z, &v)| z == v as usize)
    }
}

/// All gyration images, flat `[(a·n + b)·n + z]`, computed once per verify or
/// wrapped table.
fn gyr_images(t: &CayleyTable, inv: &[u8]) -> Vec<u8> {
    let n = t.n;
    let mut g = vec![0u8; n * n * n];
    for a in 0..n {
        for b in 0..n {
            let ab_inv = inv[t.get(a, b)] as usize;
            let base = (a * n + b) * n;
            for z in 0..n {
                g[base + z] = t.cells[ab_inv * n + t.get(a, t.get(b, z))];
            }
        }
    }
    g
}

fn int_sample(elements: &[usize], lhs: usize, rhs: usize) -> Sample {
    Sample {
        elements: elements.iter().map(|x| x.to_string()).collect(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        residual: 1.0,
    }
}

fn law_report(law: Law, counterexample: Option<Sample>) -> LawReport {
    match counterexample {
        Some(s) => LawReport { law, status: LawStatus::Fail, max_residual: 1.0, worst: Some(s) },
        None => LawReport { law, status: LawStatus::Pass, max_residual: 0.0, worst: None },
    }
}

fn skipped(law: Law) -> LawReport {
    LawReport { law, status: LawStatus::Skipped, max_residual: 0.0, worst: None }
}

/// Checks whether each row and column is a permutation. The witness for a
/// duplicate names the row (or column), the two positions sharing a value,
/// and the value on both sides.
fn latin_counterexample(t: &CayleyTable) -> Option<Sample> {
    let n = t.n;
    let mut first_pos = vec![usize::MAX; n];
    for r in 0..n {
        first_pos.iter_mut().for_each(|p| *p = usize::MAX);
        for c in 0..n {
            let v = t.get(r, c);
            if first_pos[v] != usize::MAX {
                let mut s = int_sample(&[first_pos[v], c], v, v);
                s.elements.insert(0, format!("row {r}"));
                return Some(s);
            }
            first_pos[v] = c;
        }
    }
    for c in 0..n {
        first_pos.iter_mut().for_each(|p| *p = usize::MAX);
        for r in 0..n {
            let v = t.get(r, c);
            if first_pos[v] != usize::MAX {
                let mut s = int_sample(&[first_pos[v], r], v, v);
                s.elements.insert(0, format!("column {c}"));
                return Some(s);
            }
            first_pos[v] = r;
        }
    }
    None
}

/// Exhaustive check of every law on a raw table.
///
/// Report order: latin, identity, inverses, then the equational laws. Laws
/// whose prerequisites are missing (no identity, or no inverses) come back
/// as skipped rather than failed. Each failing law carries its first
/// counterexample in row-major tuple order. Cost is dominated by the
/// gyration automorphism law at `n^4` lookups.
pub fn verify_gyrogroup(t: &CayleyTable) -> AxiomReport {
    let n = t.n;
    let mut laws = Vec::with_capacity(10);

    laws.push(law_report(Law::Latin, latin_counterexample(t)));

    let mut identities: Vec<usize> = (0..n)
        .filter(|&e| (0..n).all(|x| t.get(e, x) == x && t.get(x, e) == x))
        .collect();
    let e = match identities.len() {
        1 => {
            laws.push(law_report(Law::Identity, None));
            Some(identities[0])
        }
        0 => {
            // Non-existence has no witnessing tuple.
            laws.push(LawReport {
                law: Law::Identity,
                status: LawStatus::Fail,
                max_residual: 1.0,
                worst: None,
            });
            None
        }
        _ => {
            let (e1, e2) = (identities.remove(0), identities.remove(0));
            laws.push(law_report(Law::Identity, Some(int_sample(&[e1, e2], e1, e2))));
            None
        }
    };

    let inv = match e {
        None => {
            laws.push(skipped(Law::Inverses));
            None
        }
        Some(e) => match t.two_sided_inverses(e) {
            Ok(inv) => {
                laws.push(law_report(Law::Inverses, None));
                Some(inv)
            }
            Err(FiniteError::NotInvertible(x)) => {
                laws.push(law_report(
                    Law::Inverses,
                    Some(int_sample(&[x], x, e)),
                ));
                None
            }
            Err(_) => unreachable!(),
        },
    };

    match (e, inv) {
        (Some(e), Some(inv)) => {
            let gyr = gyr_images(t, &inv);
            laws.extend(equational_reports(t, e, &inv, &gyr));
        }
        _ => {
            for law in &Law::EQUATIONAL[2..] {
                laws.push(skipped(*law));
            }
        }
    }

    AxiomReport::from_laws(CheckMode::Exhaustive { carrier: n }, 0.0, laws)
}

/// The seven equational laws on a table with known identity, inverses, and
/// precomputed gyrations.
#[allow(clippy::needless_range_loop)] // x and y index the table as well as inv
fn equational_reports(t: &CayleyTable, _e: usize, inv: &[u8], gyr: &[u8]) -> Vec<LawReport> {
    let n = t.n;
    let g = |a: usize, b: usize, z: usize| gyr[(a * n + b) * n + z] as usize;

    let mut left_gyro = None;
    'g3: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = t.get(x, t.get(y, z));
                let rhs = t.get(t.get(x, y), g(x, y, z));
                if lhs != rhs {
                    left_gyro = Some(int_sample(&[x, y, z], lhs, rhs));
                    break 'g3;
                }
            }
        }
    }

    let mut gyr_aut = None;
    'aut: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let lhs = g(x, y, t.get(z, w));
                    let rhs = t.get(g(x, y, z), g(x, y, w));
                    if lhs != rhs {
                        gyr_aut = Some(int_sample(&[x, y, z, w], lhs, rhs));
                        break 'aut;
                    }
                }
            }
        }
    }

    let mut left_loop = None;
    'll: for x in 0..n {
        for y in 0..n {
            let xy = t.get(x, y);
            for z in 0..n {
                let lhs = g(xy, y, z);
                let rhs = g(x, y, z);
                if lhs != rhs {
                    left_loop = Some(int_sample(&[x, y, z], lhs, rhs));
                    break 'll;
                }
            }
        }
    }

    let mut left_cancel = None;
    'lc: for x in 0..n {
        let nx = inv[x] as usize;
        for y in 0..n {
            let lhs = t.get(nx, t.get(x, y));
            if lhs != y {
                left_cancel = Some(int_sample(&[x, y], lhs, y));
                break 'lc;
            }
        }
    }

    let mut right_cancel_i = None;
    'rc1: for x in 0..n {
        for y in 0..n {
            let ny = inv[y] as usize;
            let lhs = t.get(t.get(x, ny), g(x, ny, y));
            if lhs != x {
                right_cancel_i = Some(int_sample(&[x, y], lhs, x));
                break 'rc1;
            }
        }
    }

    let mut right_cancel_ii = None;
    'rc2: for x in 0..n {
        for y in 0..n {
            let lhs = t.get(t.get(x, g(x, y, inv[y] as usize)), y);
            if lhs != x {
                right_cancel_ii = Some(int_sample(&[x, y], lhs, x));
                break 'rc2;
            }
        }
    }

    let mut right_gyro = None;
    'rg: for x in 0..n {
        for y in 0..n {
            let xy = t.get(x, y);
            for z in 0..n {
                let lhs = t.get(xy, z);
                let rhs = t.get(x, t.get(y, g(y, x, z)));
                if lhs != rhs {
                    right_gyro = Some(int_sample(&[x, y, z], lhs, rhs));
                    break 'rg;
                }
            }
        }
    }

    vec![
        law_report(Law::LeftGyroassociativity, left_gyro),
        law_report(Law::GyrationAutomorphism, gyr_aut),
        law_report(Law::LeftLoop, left_loop),
        law_report(Law::LeftCancellation, left_cancel),
        law_report(Law::RightCancellationI, right_cancel_i),
        law_report(Law::RightCancellationII, right_cancel_ii),
        law_report(Law::RightGyroassociativity, right_gyro),
    ]
}

/// A Cayley table that passed [`verify_gyrogroup`], with its identity,
/// inverse map, and gyration images cached.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGyrogroup {
    table: CayleyTable,
    e: u8,
    inv: Vec<u8>,
    gyr: Vec<u8>,
}

impl FiniteGyrogroup {
    pub fn verify(table: CayleyTable) -> Result<FiniteGyrogroup, FiniteError> {
        let report = verify_gyrogroup(&table);
        if let Some(failure) = report.first_failure() {
            return Err(FiniteError::NotAGyrogroup { law: failure.law.name() });
        }
        let e = table.identity().expect("verified table has an identity");
        let inv = table.two_sided_inverses(e).expect("verified table has inverses");
        let gyr = gyr_images(&table, &inv);
        Ok(FiniteGyrogroup { table, e: e as u8, inv, gyr })
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.n
    }

    pub fn identity_elem(&self) -> usize {
        self.e as usize
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.table.get(a, b)
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn gyr_image(&self, a: usize, b: usize, z: usize) -> usize {
        let n = self.table.n;
        self.gyr[(a * n + b) * n + z] as usize
    }

    pub fn gyr_map(&self, a: usize, b: usize) -> GyrationMap {
        let n = self.table.n;
        GyrationMap {
            a: a as u8,
            b: b as u8,
            perm: self.gyr[(a * n + b) * n..(a * n + b) * n + n].to_vec(),
        }
    }

    /// True when every gyration is the identity map, i.e. the gyrogroup is a
    /// group.
    pub fn is_group(&self) -> bool {
        let n = self.table.n;
        self.gyr
            .chunks_exact(n)
            .all(|p| p.iter().enumerate().all(|(z, &v)| z == v as usize))
    }
}

impl GyroModel for FiniteGyrogroup {
    type Elem = u8;

    fn identity(&self) -> u8 {
        self.e
    }

    fn op(&self, a: u8, b: u8) -> u8 {
        self.table.at(a, b)
    }

    fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    fn dist(&self, a: u8, b: u8) -> f64 {
        if a == b {
            0.0
        } else {
            1.0
        }
    }

    fn render(&self, a: u8) -> String {
        a.to_string()
    }
}

/// Direct product: carrier `{0, .., n1·n2 - 1}` with `(i, j)` encoded as
/// `i·n2 + j` and both coordinates composed independently.
pub fn product_gyrogroup(
    a: &FiniteGyrogroup,
    b: &FiniteGyrogroup,
) -> Result<CayleyTable, FiniteError> {
    let (n1, n2) = (a.order(), b.order());
    let n = n1 * n2;
    if n > MAX_ORDER {
        return Err(FiniteError::OrderTooLarge { order: n, max: MAX_ORDER });
    }
    let mut cells = vec![0u8; n * n];
    for i1 in 0..n1 {
        for j1 in 0..n2 {
            let x = i1 * n2 + j1;
            for i2 in 0..n1 {
                for j2 in 0..n2 {
                    let y = i2 * n2 + j2;
                    cells[x * n + y] = (a.compose(i1, i2) * n2 + b.compose(j1, j2)) as u8;
                }
            }
        }
    }
    Ok(CayleyTable { n, cells })
}
