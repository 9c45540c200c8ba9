//! Subsets of a finite gyrogroup: subgyrogroups, cosets, translate covers.
//!
//! Subsets are 64-bit masks, so everything here requires order at most 64.
//! A nonempty subset is a subgyrogroup exactly when it is closed under `⊕`
//! and `⊖`, and an L-subgyrogroup when additionally `gyr[a, h](H) = H` for
//! every `a` in the carrier and `h` in `H`; left cosets `a ⊕ H` of an
//! L-subgyrogroup partition the carrier and agree with the fibers of the
//! projection `a ↦ a ⊕ H`.

use std::collections::BTreeSet;
use std::ops::{BitAnd, BitOr};

use super::{FiniteError, FiniteGyrogroup};

pub const MAX_SUBSET_ORDER: usize = 64;

/// Default carrier-size cap for [`enumerate_subgyrogroups`].
pub const DEFAULT_ENUMERATION_LIMIT: usize = 16;

/// A subset of `{0, .., 63}` as a bitmask. Ordering is by mask value, which
/// sorts covers and enumerations deterministically.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn singleton(x: usize) -> Subset {
        debug_assert!(x < MAX_SUBSET_ORDER);
        Subset(1 << x)
    }

    /// The full carrier `{0, .., n-1}`.
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= MAX_SUBSET_ORDER);
        if n == MAX_SUBSET_ORDER {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn from_elements(xs: impl IntoIterator<Item = usize>) -> Result<Subset, FiniteError> {
        let mut bits = 0u64;
        for x in xs {
            if x >= MAX_SUBSET_ORDER {
                return Err(FiniteError::ElementOutOfRange { element: x, order: MAX_SUBSET_ORDER });
            }
            bits |= 1 << x;
        }
        Ok(Subset(bits))
    }

    pub fn contains(self, x: usize) -> bool {
        x < MAX_SUBSET_ORDER && self.0 >> x & 1 == 1
    }

    pub fn with(self, x: usize) -> Subset {
        debug_assert!(x < MAX_SUBSET_ORDER);
        Subset(self.0 | 1 << x)
    }

    pub fn card(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let x = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(x)
            }
        })
    }

    pub fn elements(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn bits(self) -> u64 {
        self.0
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

fn ensure_supported(g: &FiniteGyrogroup) -> Result<(), FiniteError> {
    let order = g.order();
    if order > MAX_SUBSET_ORDER {
        Err(FiniteError::SubsetOrderTooLarge { order, max: MAX_SUBSET_ORDER })
    } else {
        Ok(())
    }
}

fn ensure_in_carrier(g: &FiniteGyrogroup, s: Subset) -> Result<(), FiniteError> {
    ensure_supported(g)?;
    let stray = s.0 & !Subset::full(g.order()).0;
    if stray != 0 {
        return Err(FiniteError::ElementOutOfRange {
            element: stray.trailing_zeros() as usize,
            order: g.order(),
        });
    }
    Ok(())
}

/// Elementwise `A ⊕ B = { a ⊕ b : a ∈ A, b ∈ B }`.
pub fn set_oplus(g: &FiniteGyrogroup, a: Subset, b: Subset) -> Result<Subset, FiniteError> {
    ensure_in_carrier(g, a)?;
    ensure_in_carrier(g, b)?;
    let mut out = Subset::EMPTY;
    for x in a.iter() {
        for y in b.iter() {
            out = out.with(g.compose(x, y));
        }
    }
    Ok(out)
}

/// The left translate `x ⊕ S`.
pub fn left_translate(g: &FiniteGyrogroup, x: usize, s: Subset) -> Result<Subset, FiniteError> {
    ensure_in_carrier(g, s)?;
    if x >= g.order() {
        return Err(FiniteError::ElementOutOfRange { element: x, order: g.order() });
    }
    let mut out = Subset::EMPTY;
    for y in s.iter() {
        out = out.with(g.compose(x, y));
    }
    Ok(out)
}

/// Nonempty and closed under `⊕` and `⊖`. Closure under both forces the
/// identity in (as `x ⊕ ⊖x`), so no separate identity test is needed.
pub fn is_subgyrogroup(g: &FiniteGyrogroup, h: Subset) -> Result<bool, FiniteError> {
    ensure_in_carrier(g, h)?;
    if h.is_empty() {
        return Err(FiniteError::EmptySubset);
    }
    for x in h.iter() {
        if !h.contains(g.inverse(x)) {
            return Ok(false);
        }
        for y in h.iter() {
            if !h.contains(g.compose(x, y)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A subgyrogroup `H` with `gyr[a, h](H) = H` for every `a` in the carrier
/// and `h` in `H`. Errors if `h` is not a subgyrogroup at all.
pub fn is_l_subgyrogroup(g: &FiniteGyrogroup, h: Subset) -> Result<bool, FiniteError> {
    if !is_subgyrogroup(g, h)? {
        return Err(FiniteError::NotASubgyrogroup);
    }
    // Gyrations are bijective, so image ⊆ H suffices for image = H.
    for a in 0..g.order() {
        for x in h.iter() {
            for y in h.iter() {
                if !h.contains(g.gyr_image(a, x, y)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Smallest subgyrogroup containing `seed`: fixpoint under `⊕`, `⊖`, and the
/// identity.
pub fn subgyro_closure(g: &FiniteGyrogroup, seed: Subset) -> Result<Subset, FiniteError> {
    ensure_in_carrier(g, seed)?;
    let mut cur = seed.with(g.identity_elem());
    loop {
        let mut next = cur;
        for x in cur.iter() {
            next = next.with(g.inverse(x));
            for y in cur.iter() {
                next = next.with(g.compose(x, y));
            }
        }
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}

#[derive(Clone, Debug)]
pub struct SubgyrogroupInfo {
    pub elements: Subset,
    pub is_l: bool,
}

/// All subgyrogroups, found by closing generator sets rather than scanning
/// all `2^n` subsets: start from the cyclic closures and repeatedly extend
/// each found subgyrogroup by one outside element. Every subgyrogroup is
/// reachable this way because closing a subset of it stays inside it.
///
/// Sorted by cardinality, then mask. Capped at order
/// [`DEFAULT_ENUMERATION_LIMIT`]; see
/// [`enumerate_subgyrogroups_with_limit`] to override up to 64.
pub fn enumerate_subgyrogroups(
    g: &FiniteGyrogroup,
) -> Result<Vec<SubgyrogroupInfo>, FiniteError> {
    enumerate_subgyrogroups_with_limit(g, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_subgyrogroups_with_limit(
    g: &FiniteGyrogroup,
    max_order: usize,
) -> Result<Vec<SubgyrogroupInfo>, FiniteError> {
    ensure_supported(g)?;
    let n = g.order();
    let cap = max_order.min(MAX_SUBSET_ORDER);
    if n > cap {
        return Err(FiniteError::SubsetOrderTooLarge { order: n, max: cap });
    }
    let mut found = BTreeSet::new();
    let mut frontier: Vec<Subset> = Vec::new();
    let trivial = subgyro_closure(g, Subset::EMPTY)?;
    found.insert(trivial);
    frontier.push(trivial);
    while let Some(h) = frontier.pop() {
        for x in 0..n {
            if h.contains(x) {
                continue;
            }
            let bigger = subgyro_closure(g, h.with(x))?;
            if found.insert(bigger) {
                frontier.push(bigger);
            }
        }
    }
    let mut out: Vec<Subset> = found.into_iter().collect();
    out.sort_by_key(|h| (h.card(), h.bits()));
    out.into_iter()
        .map(|h| {
            Ok(SubgyrogroupInfo { elements: h, is_l: is_l_subgyrogroup(g, h)? })
        })
        .collect()
}

/// How close `{a ⊕ H}` comes to being a genuine quotient. For an
/// L-subgyrogroup all four hold; `fiber_identity` is the statement
/// `b ∈ a ⊕ H  ⟺  a ⊕ H = b ⊕ H`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub struct PartitionValidation {
    pub pairwise_disjoint: bool,
    pub covers_carrier: bool,
    pub equal_sizes: bool,
    pub fiber_identity: bool,
}

impl PartitionValidation {
    pub fn is_partition(&self) -> bool {
        self.pairwise_disjoint && self.covers_carrier
    }

    pub fn all(&self) -> bool {
        self.is_partition() && self.equal_sizes && self.fiber_identity
    }
}

#[derive(Clone, Debug)]
pub struct CosetPartition {
    pub subgyrogroup: Subset,
    /// Distinct translates in order of their smallest representative.
    pub cosets: Vec<Subset>,
    /// Least element generating each coset.
    pub representatives: Vec<usize>,
    /// Index into `cosets` of the first coset containing each element.
    pub cell_of: Vec<usize>,
    pub validation: PartitionValidation,
}

/// Left cosets `a ⊕ H` of a subgyrogroup.
///
/// For an L-subgyrogroup the translates partition the carrier; passing a
/// plain subgyrogroup requires `allow_non_l` and the translates may then
/// overlap, which the validation records instead of hiding.
pub fn coset_partition(
    g: &FiniteGyrogroup,
    h: Subset,
    allow_non_l: bool,
) -> Result<CosetPartition, FiniteError> {
    let is_l = is_l_subgyrogroup(g, h)?;
    if !is_l && !allow_non_l {
        return Err(FiniteError::NotLSubgyrogroup);
    }
    let n = g.order();
    let translates: Vec<Subset> = (0..n)
        .map(|a| left_translate(g, a, h))
        .collect::<Result<_, _>>()?;
    let mut cosets = Vec::new();
    let mut representatives = Vec::new();
    for (a, &t) in translates.iter().enumerate() {
        if !cosets.contains(&t) {
            cosets.push(t);
            representatives.push(a);
        }
    }
    let cell_of = (0..n)
        .map(|x| cosets.iter().position(|c| c.contains(x)).unwrap_or(usize::MAX))
        .collect::<Vec<_>>();

    let mut union = Subset::EMPTY;
    let mut pairwise_disjoint = true;
    for (i, &a) in cosets.iter().enumerate() {
        for &b in &cosets[i + 1..] {
            if !(a & b).is_empty() {
                pairwise_disjoint = false;
            }
        }
        union = union | a;
    }
    let covers_carrier = union == Subset::full(n);
    let equal_sizes = cosets.iter().all(|c| c.card() == h.card());
    let mut fiber_identity = true;
    'fi: for a in 0..n {
        for b in 0..n {
            let same = translates[a] == translates[b];
            let member = translates[a].contains(b);
            if same != member {
                fiber_identity = false;
                break 'fi;
            }
        }
    }

    Ok(CosetPartition {
        subgyrogroup: h,
        cosets,
        representatives,
        cell_of,
        validation: PartitionValidation {
            pairwise_disjoint,
            covers_carrier,
            equal_sizes,
            fiber_identity,
        },
    })
}

/// The cover `{ x ⊕ U : x in carrier }`, deduplicated and sorted by mask.
/// `U` must contain the identity so that each `x` lies in its own translate.
pub fn translate_cover(g: &FiniteGyrogroup, u: Subset) -> Result<Vec<Subset>, FiniteError> {
    ensure_in_carrier(g, u)?;
    if !u.contains(g.identity_elem()) {
        return Err(FiniteError::IdentityNotInSubset { identity: g.identity_elem() });
    }
    let mut set = BTreeSet::new();
    for x in 0..g.order() {
        set.insert(left_translate(g, x, u)?);
    }
    Ok(set.into_iter().collect())
}

/// Union of the cover sets containing `x`.
pub fn star_of_point(cover: &[Subset], x: usize) -> Result<Subset, FiniteError> {
    if x >= MAX_SUBSET_ORDER {
        return Err(FiniteError::ElementOutOfRange { element: x, order: MAX_SUBSET_ORDER });
    }
    let mut star = Subset::EMPTY;
    let mut hit = false;
    for &s in cover {
        if s.contains(x) {
            star = star | s;
            hit = true;
        }
    }
    if hit {
        Ok(star)
    } else {
        Err(FiniteError::PointUncovered { point: x })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::FiniteGyrogroup;
    use crate::tables;

    fn z4() -> FiniteGyrogroup {
        FiniteGyrogroup::verify(tables::cyclic(4).unwrap()).unwrap()
    }

    #[test]
    fn z4_even_subgroup_cosets() {
        let g = z4();
        let h = Subset::from_elements([0, 2]).unwrap();
        assert!(is_subgyrogroup(&g, h).unwrap());
        assert!(is_l_subgyrogroup(&g, h).unwrap());
        let p = coset_partition(&g, h, false).unwrap();
        assert_eq!(p.cosets.len(), 2);
        assert_eq!(p.cosets[0].elements(), vec![0, 2]);
        assert_eq!(p.cosets[1].elements(), vec![1, 3]);
        assert_eq!(p.representatives, vec![0, 1]);
        assert_eq!(p.cell_of, vec![0, 1, 0, 1]);
        assert!(p.validation.all());
    }

    #[test]
    fn z4_odd_subset_is_not_a_subgyrogroup() {
        let g = z4();
        let h = Subset::from_elements([0, 1]).unwrap();
        assert!(!is_subgyrogroup(&g, h).unwrap());
        assert!(matches!(
            coset_partition(&g, h, true),
            Err(FiniteError::NotASubgyrogroup)
        ));
        assert!(matches!(
            is_subgyrogroup(&g, Subset::EMPTY),
            Err(FiniteError::EmptySubset)
        ));
    }

    #[test]
    fn z4_subgyrogroups_by_closure() {
        let g = z4();
        let subs = enumerate_subgyrogroups(&g).unwrap();
        let masks: Vec<Vec<usize>> = subs.iter().map(|s| s.elements.elements()).collect();
        assert_eq!(masks, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
        assert!(subs.iter().all(|s| s.is_l));
    }

    #[test]
    fn closure_of_generator_is_whole_cyclic_group() {
        let g = z4();
        let c = subgyro_closure(&g, Subset::singleton(1)).unwrap();
        assert_eq!(c, Subset::full(4));
    }

    #[test]
    fn star_in_z4_translate_cover() {
        let g = z4();
        let u = Subset::from_elements([0, 1]).unwrap();
        let cover = translate_cover(&g, u).unwrap();
        assert_eq!(cover.len(), 4);
        // Sets containing 0: {0,1} and {3,0}; star = {3, 0, 1}.
        let star = star_of_point(&cover, 0).unwrap();
        assert_eq!(star.elements(), vec![0, 1, 3]);
        assert!(matches!(
            star_of_point(&[Subset::singleton(1)], 0),
            Err(FiniteError::PointUncovered { point: 0 })
        ));
    }

    #[test]
    fn set_oplus_matches_pairwise_composition() {
        let g = z4();
        let a = Subset::from_elements([1, 2]).unwrap();
        let b = Subset::from_elements([0, 3]).unwrap();
        // {1⊕0, 1⊕3, 2⊕0, 2⊕3} = {1, 0, 2, 1} = {0, 1, 2}.
        assert_eq!(set_oplus(&g, a, b).unwrap().elements(), vec![0, 1, 2]);
    }

    #[test]
    fn out_of_carrier_subset_is_rejected() {
        let g = z4();
        let s = Subset::from_elements([0, 5]).unwrap();
        assert!(matches!(
            set_oplus(&g, s, s),
            Err(FiniteError::ElementOutOfRange { element: 5, order: 4 })
        ));
    }
}
