//! Positions of the strictly lower triangle (the positive roots of type `A_{n-1}`),
//! hooks, closed sets and sets of main conditions.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported matrix size; the lower triangle then has 120 positions.
pub const MAX_N: usize = 16;

/// A position `(i, j)` with `1 <= j < i <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootPos {
    pub i: usize,
    pub j: usize,
}

impl RootPos {
    pub const fn new(i: usize, j: usize) -> Self {
        RootPos { i, j }
    }

    pub fn checked(i: usize, j: usize, n: usize) -> Result<Self> {
        if 1 <= j && j < i && i <= n && n <= MAX_N {
            Ok(RootPos { i, j })
        } else {
            Err(Error::InvalidPosition { i, j, n })
        }
    }

    /// Row-major index into the lower triangle: `(2,1) -> 0, (3,1) -> 1, (3,2) -> 2, ...`.
    #[inline]
    pub fn index(self) -> usize {
        (self.i - 1) * (self.i - 2) / 2 + (self.j - 1)
    }

    pub fn from_index(idx: usize) -> Self {
        let mut i = 2;
        while (i - 1) * i / 2 <= idx {
            i += 1;
        }
        RootPos::new(i, idx - (i - 1) * (i - 2) / 2 + 1)
    }
}

impl fmt::Display for RootPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl Serialize for RootPos {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.i, self.j].serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootPos {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [i, j] = <[usize; 2]>::deserialize(d)?;
        if j >= 1 && j < i {
            Ok(RootPos { i, j })
        } else {
            Err(serde::de::Error::custom(format!("({i},{j}) is not strictly lower triangular")))
        }
    }
}

pub fn triangle_len(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// All positions of the lower triangle of size `n`, in index order.
pub fn positions(n: usize) -> impl Iterator<Item = RootPos> {
    (2..=n).flat_map(|i| (1..i).map(move |j| RootPos::new(i, j)))
}

/// A set of lower-triangle positions, stored as a bitset over [`RootPos::index`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PatternSet {
    n: usize,
    bits: u128,
}

impl fmt::Debug for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// `{(2,1), (3,1)}`.
impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

impl PatternSet {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_N, "n = {n} exceeds {MAX_N}");
        PatternSet { n, bits: 0 }
    }

    /// The whole lower triangle.
    pub fn full(n: usize) -> Self {
        let len = triangle_len(n);
        let bits = if len == 128 { u128::MAX } else { (1u128 << len) - 1 };
        PatternSet { n, bits }
    }

    pub fn from_positions(n: usize, it: impl IntoIterator<Item = RootPos>) -> Self {
        let mut s = Self::empty(n);
        for p in it {
            s.insert(p);
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn insert(&mut self, p: RootPos) {
        debug_assert!(p.i <= self.n && p.j < p.i);
        self.bits |= 1u128 << p.index();
    }

    pub fn remove(&mut self, p: RootPos) {
        self.bits &= !(1u128 << p.index());
    }

    #[inline]
    pub fn contains(&self, p: RootPos) -> bool {
        p.i <= self.n && p.j >= 1 && p.j < p.i && self.bits >> p.index() & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn union(&self, other: &Self) -> Self {
        PatternSet { n: self.n, bits: self.bits | other.bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        PatternSet { n: self.n, bits: self.bits & other.bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        PatternSet { n: self.n, bits: self.bits & !other.bits }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    /// Positions in increasing index order (row by row, left to right).
    pub fn iter(&self) -> impl Iterator<Item = RootPos> + '_ {
        let bits = self.bits;
        (0..triangle_len(self.n)).filter(move |&b| bits >> b & 1 == 1).map(RootPos::from_index)
    }

    /// Sorted by `(i, j)`.
    pub fn to_vec(&self) -> Vec<RootPos> {
        self.iter().collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// `true` iff `(i,j), (j,k)` in the set imply `(i,k)` in the set.
    pub fn is_closed(&self) -> bool {
        self.closure_failure().is_none()
    }

    /// A witness `((i,j), (j,k))` whose sum `(i,k)` is missing.
    pub fn closure_failure(&self) -> Option<(RootPos, RootPos)> {
        for a in self.iter() {
            for k in 1..a.j {
                let b = RootPos::new(a.j, k);
                if self.contains(b) && !self.contains(RootPos::new(a.i, k)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// `D(J) = {(i,k) : (i,j), (j,k) in J for some j}`, the support of the derived
    /// subgroup of the pattern group `U_J`.
    pub fn derived(&self) -> PatternSet {
        let mut out = PatternSet::empty(self.n);
        for a in self.iter() {
            for k in 1..a.j {
                if self.contains(RootPos::new(a.j, k)) {
                    out.insert(RootPos::new(a.i, k));
                }
            }
        }
        out
    }

    /// Pattern-subgroup normality of `U_self` in `U_ambient` (both closed, `self ⊆ ambient`).
    pub fn is_normal_in(&self, ambient: &PatternSet) -> bool {
        if !self.is_subset(ambient) {
            return false;
        }
        for a in ambient.iter() {
            for b in self.iter() {
                if a.j == b.i && !self.contains(RootPos::new(a.i, b.j)) {
                    return false;
                }
                if b.j == a.i && !self.contains(RootPos::new(b.i, a.j)) {
                    return false;
                }
            }
        }
        true
    }
}

impl Serialize for PatternSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

/// Arm and leg of the hook centred at `pos`.
pub fn hook(pos: RootPos) -> (Vec<RootPos>, Vec<RootPos>) {
    let arm = (pos.j + 1..pos.i).map(|k| RootPos::new(pos.i, k)).collect();
    let leg = (pos.j + 1..pos.i).map(|l| RootPos::new(l, pos.j)).collect();
    (arm, leg)
}

/// The single position where the hooks of two distinct positions meet inside the
/// lower triangle, if any. For `j < s < i < r` the hooks at `(i,j)` and `(r,s)`
/// meet at `(i,s)`.
pub fn hook_meeting(a: RootPos, b: RootPos) -> Option<RootPos> {
    let chain = |x: RootPos, y: RootPos| (x.j < y.j && y.j < x.i && x.i < y.i).then(|| RootPos::new(x.i, y.j));
    chain(a, b).or_else(|| chain(b, a))
}

/// A set of main conditions: positions in pairwise distinct rows and columns.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MainConditionSet {
    set: PatternSet,
}

impl fmt::Debug for MainConditionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.set, f)
    }
}

impl fmt::Display for MainConditionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.set, f)
    }
}

/// A pair of main conditions whose hooks meet, and where.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HookIntersection {
    /// The condition `(i,j)` with the smaller row.
    pub lower: RootPos,
    /// The condition `(r,s)`, `j < s < i < r`.
    pub upper: RootPos,
    /// `(i,s)`.
    pub meeting: RootPos,
}

impl MainConditionSet {
    pub fn new(n: usize, positions: impl IntoIterator<Item = RootPos>) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::UnsupportedDimension(n));
        }
        let mut set = PatternSet::empty(n);
        let (mut rows, mut cols) = (0u32, 0u32);
        for p in positions {
            let p = RootPos::checked(p.i, p.j, n)?;
            if rows >> p.i & 1 == 1 || cols >> p.j & 1 == 1 {
                return Err(Error::InvalidMainConditions);
            }
            rows |= 1 << p.i;
            cols |= 1 << p.j;
            set.insert(p);
        }
        Ok(MainConditionSet { set })
    }

    pub(crate) fn from_set_unchecked(set: PatternSet) -> Self {
        MainConditionSet { set }
    }

    pub fn empty(n: usize) -> Self {
        MainConditionSet { set: PatternSet::empty(n) }
    }

    pub fn n(&self) -> usize {
        self.set.n()
    }

    pub fn as_set(&self) -> &PatternSet {
        &self.set
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = RootPos> + '_ {
        self.set.iter()
    }

    pub fn contains(&self, p: RootPos) -> bool {
        self.set.contains(p)
    }

    /// The condition in row `i`, if any.
    pub fn in_row(&self, i: usize) -> Option<RootPos> {
        (1..i).map(|j| RootPos::new(i, j)).find(|&p| self.set.contains(p))
    }

    /// The condition in column `j`, if any.
    pub fn in_column(&self, j: usize) -> Option<RootPos> {
        (j + 1..=self.n()).map(|i| RootPos::new(i, j)).find(|&p| self.set.contains(p))
    }

    /// All meetings of hooks centred at conditions, one per chained pair.
    pub fn hook_intersections(&self) -> Vec<HookIntersection> {
        let ps: Vec<RootPos> = self.iter().collect();
        let mut out = Vec::new();
        for (x, &a) in ps.iter().enumerate() {
            for &b in &ps[x + 1..] {
                let (lower, upper) = if a.i < b.i { (a, b) } else { (b, a) };
                if lower.j < upper.j && upper.j < lower.i && lower.i < upper.i {
                    out.push(HookIntersection { lower, upper, meeting: RootPos::new(lower.i, upper.j) });
                }
            }
        }
        out
    }

    /// Number of hook intersections `b`.
    pub fn intersection_count(&self) -> usize {
        self.hook_intersections().len()
    }

    /// Total arm length `a = sum (i - j - 1)`.
    pub fn arm_total(&self) -> usize {
        self.iter().map(|p| p.i - p.j - 1).sum()
    }

    /// Union of all hook arms.
    pub fn arms(&self) -> PatternSet {
        PatternSet::from_positions(self.n(), self.iter().flat_map(|p| hook(p).0))
    }

    /// Union of all hook legs.
    pub fn legs(&self) -> PatternSet {
        PatternSet::from_positions(self.n(), self.iter().flat_map(|p| hook(p).1))
    }

    pub fn meetings(&self) -> PatternSet {
        PatternSet::from_positions(self.n(), self.hook_intersections().into_iter().map(|h| h.meeting))
    }
}

impl Serialize for MainConditionSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.set.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(i: usize, j: usize) -> RootPos {
        RootPos::new(i, j)
    }

    fn brute_closed(s: &PatternSet) -> bool {
        let n = s.n();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    if k < j && j < i && s.contains(rp(i, j)) && s.contains(rp(j, k)) && !s.contains(rp(i, k)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn index_roundtrip() {
        for (idx, p) in positions(MAX_N).enumerate() {
            assert_eq!(p.index(), idx);
            assert_eq!(RootPos::from_index(idx), p);
        }
        assert_eq!(triangle_len(MAX_N), 120);
    }

    #[test]
    fn hooks() {
        assert_eq!(hook(rp(3, 1)), (vec![rp(3, 2)], vec![rp(2, 1)]));
        assert_eq!(hook(rp(2, 1)), (vec![], vec![]));
        assert_eq!(hook(rp(5, 2)), (vec![rp(5, 3), rp(5, 4)], vec![rp(3, 2), rp(4, 2)]));
        for p in positions(8) {
            let (arm, leg) = hook(p);
            assert_eq!(arm.len(), p.i - p.j - 1);
            assert_eq!(leg.len(), arm.len());
        }
    }

    #[test]
    fn closedness() {
        assert!(!PatternSet::from_positions(3, [rp(3, 2), rp(2, 1)]).is_closed());
        assert!(PatternSet::from_positions(3, [rp(3, 2), rp(2, 1), rp(3, 1)]).is_closed());
        assert!(PatternSet::empty(3).is_closed());
        assert!(PatternSet::full(6).is_closed());
    }

    #[test]
    fn closedness_matches_triple_scan_on_all_subsets_n4() {
        for bits in 0u128..1 << 6 {
            let s = PatternSet { n: 4, bits };
            assert_eq!(s.is_closed(), brute_closed(&s));
        }
    }

    #[test]
    fn hook_intersection_examples() {
        let p = MainConditionSet::new(4, [rp(3, 1), rp(4, 2)]).unwrap();
        let hs = p.hook_intersections();
        assert_eq!(hs.len(), 1);
        assert_eq!(hs[0].meeting, rp(3, 2));

        let p = MainConditionSet::new(3, [rp(2, 1), rp(3, 2)]).unwrap();
        assert_eq!(p.intersection_count(), 0);

        let p = MainConditionSet::new(5, [rp(3, 1), rp(4, 2), rp(5, 3)]).unwrap();
        let meet: BTreeSet<_> = p.hook_intersections().iter().map(|h| h.meeting).collect();
        assert_eq!(meet, [rp(3, 2), rp(4, 3)].into_iter().collect());
    }

    #[test]
    fn hook_intersections_agree_with_set_intersection_of_hooks() {
        // meetings inside the triangle are exactly the common positions of the full hooks
        let full_hook = |p: RootPos| {
            let (a, l) = hook(p);
            let mut s: BTreeSet<RootPos> = a.into_iter().chain(l).collect();
            s.insert(p);
            s
        };
        for a in positions(7) {
            for b in positions(7) {
                if a.i == b.i || a.j == b.j {
                    continue;
                }
                let common: Vec<_> = full_hook(a).intersection(&full_hook(b)).copied().collect();
                assert!(common.len() <= 1);
                assert_eq!(common.first().copied(), hook_meeting(a, b));
            }
        }
    }

    #[test]
    fn arm_totals() {
        assert_eq!(MainConditionSet::new(4, [rp(3, 1), rp(4, 2)]).unwrap().arm_total(), 2);
        assert_eq!(MainConditionSet::empty(4).arm_total(), 0);
        assert_eq!(MainConditionSet::new(5, [rp(5, 1)]).unwrap().arm_total(), 3);
    }

    #[test]
    fn main_condition_validation() {
        assert_eq!(
            MainConditionSet::new(4, [rp(3, 1), rp(3, 2)]),
            Err(Error::InvalidMainConditions)
        );
        assert_eq!(
            MainConditionSet::new(4, [rp(3, 1), rp(4, 1)]),
            Err(Error::InvalidMainConditions)
        );
        assert!(MainConditionSet::new(4, [rp(2, 2)]).is_err());
    }

    #[test]
    fn derived_support_of_full_triangle() {
        // D(Phi+) is everything off the first subdiagonal
        let d = PatternSet::full(5).derived();
        let expected = PatternSet::from_positions(5, positions(5).filter(|p| p.i - p.j >= 2));
        assert_eq!(d, expected);
    }

    #[test]
    fn json_shapes() {
        assert_eq!(serde_json::to_string(&rp(3, 1)).unwrap(), "[3,1]");
        let s = PatternSet::from_positions(4, [rp(4, 2), rp(3, 1)]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[[3,1],[4,2]]");
        assert!(serde_json::from_str::<RootPos>("[2,2]").is_err());
    }
}
