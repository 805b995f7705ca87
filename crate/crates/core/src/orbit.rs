//! Right and left orbits on idempotent labels, templates, verges and the orbit-size laws.

use std::collections::HashSet;

use num_bigint::BigUint;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::action::{NilMatrix, Side, UnitriGroup};
use crate::census::enumerate_main_sets;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::roots::{hook, hook_meeting, positions, MainConditionSet, PatternSet, RootPos};

/// Default cap on the number of stored orbit members.
pub const DEFAULT_ORBIT_CAP: usize = 1 << 22;

/// A set of main conditions with nonzero values: the verge of a biorbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VergeData {
    main: MainConditionSet,
    values: Vec<(RootPos, FieldElement)>,
}

impl VergeData {
    pub fn new(n: usize, values: impl IntoIterator<Item = (RootPos, FieldElement)>) -> Result<Self> {
        let mut values: Vec<_> = values.into_iter().collect();
        values.sort_by_key(|&(p, _)| p);
        if values.iter().any(|(_, v)| v.is_zero()) {
            return Err(Error::ZeroVergeValue);
        }
        let main = MainConditionSet::new(n, values.iter().map(|&(p, _)| p))?;
        Ok(VergeData { main, values })
    }

    /// Every condition carries the value `1`.
    pub fn ones(main: MainConditionSet) -> Self {
        let values = main.iter().map(|p| (p, FieldElement::ONE)).collect();
        VergeData { main, values }
    }

    /// Reads a verge off a matrix; fails unless rows and columns of the support are distinct.
    pub fn from_matrix(a: &NilMatrix) -> Result<Self> {
        VergeData::new(a.n(), a.nonzero_entries()).map_err(|_| Error::NotAVerge)
    }

    pub fn n(&self) -> usize {
        self.main.n()
    }

    pub fn main(&self) -> &MainConditionSet {
        &self.main
    }

    pub fn values(&self) -> &[(RootPos, FieldElement)] {
        &self.values
    }

    pub fn value(&self, p: RootPos) -> Option<FieldElement> {
        self.values.iter().find(|&&(q, _)| q == p).map(|&(_, v)| v)
    }

    pub fn a(&self) -> usize {
        self.main.arm_total()
    }

    pub fn b(&self) -> usize {
        self.main.intersection_count()
    }

    pub fn to_matrix(&self) -> NilMatrix {
        let mut m = NilMatrix::zero(self.n());
        for &(p, v) in &self.values {
            m.set(p, v);
        }
        m
    }
}

impl Serialize for VergeData {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("VergeData", 2)?;
        st.serialize_field("n", &self.n())?;
        let entries: Vec<[u32; 3]> = self.values.iter().map(|&(p, v)| [p.i as u32, p.j as u32, v.code()]).collect();
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// Shape data of a label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_verge: bool,
    pub is_template: bool,
    /// Lowest nonzero entry of every nonzero column.
    pub main: PatternSet,
    /// Hook-leg positions of the main conditions that are not hook meetings.
    pub suppl: PatternSet,
}

fn legs_minus_meetings(n: usize, main: &[RootPos]) -> PatternSet {
    let mut s = PatternSet::from_positions(n, main.iter().flat_map(|&p| hook(p).1));
    for (x, &a) in main.iter().enumerate() {
        for &b in &main[x + 1..] {
            if let Some(m) = hook_meeting(a, b) {
                s.remove(m);
            }
        }
    }
    s
}

/// Lowest nonzero entry per column.
pub fn main_positions(a: &NilMatrix) -> Vec<RootPos> {
    let n = a.n();
    (1..n).filter_map(|j| (j + 1..=n).rev().map(|i| RootPos::new(i, j)).find(|&p| !a.get(p).is_zero())).collect()
}

pub fn is_verge(a: &NilMatrix) -> bool {
    let (mut rows, mut cols) = (0u32, 0u32);
    for (p, _) in a.nonzero_entries() {
        if rows >> p.i & 1 == 1 || cols >> p.j & 1 == 1 {
            return false;
        }
        rows |= 1 << p.i;
        cols |= 1 << p.j;
    }
    true
}

/// A right template has zeros on every hook arm of its main conditions.
pub fn is_template(a: &NilMatrix) -> bool {
    main_positions(a).into_iter().all(|p| hook(p).0.into_iter().all(|x| a.get(x).is_zero()))
}

pub fn classify(a: &NilMatrix) -> Classification {
    let main = main_positions(a);
    Classification {
        is_verge: is_verge(a),
        is_template: is_template(a),
        suppl: legs_minus_meetings(a.n(), &main),
        main: PatternSet::from_positions(a.n(), main),
    }
}

/// The template in the right orbit of `a`, found by sweeping columns left to right and
/// clearing each arm with the root element that moves the main condition's column onto it.
pub fn reduce_to_template(g: &UnitriGroup, a: &NilMatrix) -> NilMatrix {
    let f = g.field();
    let n = g.n();
    let mut m = a.clone();
    for j in 1..n {
        let Some(i) = (j + 1..=n).rev().find(|&i| !m.at(i, j).is_zero()) else { continue };
        let pivot = m.at(i, j);
        for k in j + 1..i {
            let x = m.at(i, k);
            if !x.is_zero() {
                // column k gains -α·column j, so α = x / pivot clears (i,k)
                let alpha = f.div(x, pivot).expect("pivot is nonzero");
                g.permute_right_root(&mut m, RootPos::new(k, j), alpha);
            }
        }
    }
    m
}

/// The verge of the biorbit containing `a`.
pub fn verge_of(g: &UnitriGroup, a: &NilMatrix) -> VergeData {
    let t = reduce_to_template(g, a);
    let vals = main_positions(&t).into_iter().map(|p| (p, t.get(p)));
    VergeData::new(g.n(), vals).expect("template main conditions form a verge")
}

/// A right or left orbit, as a set of labels.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub side: Side,
    pub base: NilMatrix,
    members: HashSet<NilMatrix>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: &NilMatrix) -> bool {
        self.members.contains(a)
    }

    pub fn members(&self) -> impl Iterator<Item = &NilMatrix> {
        self.members.iter()
    }

    pub fn sorted_members(&self) -> Vec<NilMatrix> {
        let mut v: Vec<_> = self.members.iter().cloned().collect();
        v.sort();
        v
    }

    pub fn intersection_len(&self, other: &Orbit) -> usize {
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.members.iter().filter(|m| big.members.contains(m)).count()
    }
}

/// Closure of `{a}` under the permutation part of the action on `side`.
pub fn orbit_bfs(g: &UnitriGroup, a: &NilMatrix, side: Side, cap: usize) -> Result<Orbit> {
    if a.n() != g.n() {
        return Err(Error::SizeMismatch { expected: g.n(), found: a.n() });
    }
    let gens: Vec<(RootPos, FieldElement)> = positions(g.n())
        .flat_map(|p| g.field().additive_generators().into_iter().map(move |x| (p, x)))
        .collect();
    let mut members = HashSet::new();
    members.insert(a.clone());
    let mut frontier = vec![a.clone()];
    while let Some(cur) = frontier.pop() {
        for &(p, alpha) in &gens {
            let mut next = cur.clone();
            g.permute_root(side, &mut next, p, alpha);
            if !members.contains(&next) {
                if members.len() >= cap {
                    return Err(Error::MemoryBudgetExceeded { cap });
                }
                members.insert(next.clone());
                frontier.push(next);
            }
        }
    }
    Ok(Orbit { side, base: a.clone(), members })
}

/// The unique template of a right orbit.
pub fn template_of_orbit(o: &Orbit) -> Result<NilMatrix> {
    let ts: Vec<&NilMatrix> = o.members().filter(|m| is_template(m)).collect();
    match ts.len() {
        0 => Err(Error::NoTemplate),
        1 => Ok(ts[0].clone()),
        k => Err(Error::MultipleTemplates(k)),
    }
}

fn checked_power(q: u32, e: usize) -> Option<u128> {
    (q as u128).checked_pow(e as u32)
}

/// All labels obtained from `base` by writing arbitrary values at `free`.
fn fillings(g: &UnitriGroup, base: &NilMatrix, free: &[RootPos], cap: usize) -> Result<Vec<NilMatrix>> {
    let total = checked_power(g.q(), free.len()).filter(|&t| t <= cap as u128);
    let Some(total) = total else { return Err(Error::MemoryBudgetExceeded { cap }) };
    let q = g.q() as u128;
    let mut out = Vec::with_capacity(total as usize);
    for mut idx in 0..total {
        let mut m = base.clone();
        for &p in free {
            m.set(p, FieldElement((idx % q) as u16));
            idx /= q;
        }
        out.push(m);
    }
    Ok(out)
}

/// The orbit of a verge described combinatorially: the verge with its arms (right) or
/// legs (left) filled arbitrarily.
pub fn verge_orbit_formula(g: &UnitriGroup, v: &VergeData, side: Side, cap: usize) -> Result<Vec<NilMatrix>> {
    let free: Vec<RootPos> = match side {
        Side::Right => v.main().arms().to_vec(),
        Side::Left => v.main().legs().to_vec(),
    };
    fillings(g, &v.to_matrix(), &free, cap)
}

/// All templates with verge `v`: free values on the legs away from hook meetings.
pub fn templates_of_verge(g: &UnitriGroup, v: &VergeData, cap: usize) -> Result<Vec<NilMatrix>> {
    let free = v.main().legs().difference(&v.main().meetings()).to_vec();
    fillings(g, &v.to_matrix(), &free, cap)
}

/// `|O^l_A ∩ O^r_A|` computed by set intersection, by formula, and against the
/// description "agrees with `A` away from the hook meetings".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub bfs: usize,
    pub formula: u128,
    pub description_matches: bool,
}

impl IntersectionReport {
    pub fn holds(&self) -> bool {
        self.bfs as u128 == self.formula && self.description_matches
    }
}

pub fn orbit_intersection_size(g: &UnitriGroup, v: &VergeData, cap: usize) -> Result<IntersectionReport> {
    let a = v.to_matrix();
    let right = orbit_bfs(g, &a, Side::Right, cap)?;
    let left = orbit_bfs(g, &a, Side::Left, cap)?;
    let both: HashSet<NilMatrix> = left.members().filter(|m| right.contains(m)).cloned().collect();
    let described: HashSet<NilMatrix> = fillings(g, &a, &v.main().meetings().to_vec(), cap)?.into_iter().collect();
    let formula = checked_power(g.q(), v.b()).ok_or(Error::Overflow("q^b"))?;
    Ok(IntersectionReport { bfs: both.len(), formula, description_matches: both == described })
}

/// `Σ_P (q-1)^{|P|} q^{2a-b}` against `q^{n(n-1)/2}`, with the partial sums by `|P|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChecksumReport {
    pub by_size: Vec<BigUint>,
    pub total: BigUint,
    pub expected: BigUint,
}

impl ChecksumReport {
    pub fn holds(&self) -> bool {
        self.total == self.expected
    }
}

impl Serialize for ChecksumReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ChecksumReport", 4)?;
        let by_size: Vec<String> = self.by_size.iter().map(|x| x.to_string()).collect();
        st.serialize_field("by_size", &by_size)?;
        st.serialize_field("total", &self.total.to_string())?;
        st.serialize_field("expected", &self.expected.to_string())?;
        st.serialize_field("holds", &self.holds())?;
        st.end()
    }
}

pub fn regular_checksum(n: usize, q: u32, cap: usize) -> Result<ChecksumReport> {
    let qb = BigUint::from(q);
    let t = BigUint::from(q - 1);
    let mut by_size = vec![BigUint::default(); n.max(1)];
    for p in enumerate_main_sets(n, cap)? {
        let a = p.arm_total() as u32;
        let b = p.intersection_count() as u32;
        by_size[p.len()] += t.pow(p.len() as u32) * qb.pow(2 * a - b);
    }
    let total = by_size.iter().sum();
    let expected = qb.pow((n * n.saturating_sub(1) / 2) as u32);
    Ok(ChecksumReport { by_size, total, expected })
}
