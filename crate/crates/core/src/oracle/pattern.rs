//! Pattern groups `U_J` and their quotients `U_J / U_N` by brute force.

use std::collections::HashSet;

use serde::Serialize;

use crate::action::{GroupElement, UnitriGroup};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::roots::{PatternSet, RootPos};

/// Default bound on the number of group elements materialized.
pub const DEFAULT_GROUP_BUDGET: usize = 1 << 20;

/// `U_J / U_N` with cosets stored as the coordinates on `J ∖ N`; for `N` normal in `J` the
/// entries of `u` off `N` are constant on `uU_N`.
pub struct PatternGroup<'a> {
    grp: &'a UnitriGroup,
    j: PatternSet,
    n: PatternSet,
    free: Vec<RootPos>,
    order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternGroupStats {
    pub order: usize,
    pub derived_order: usize,
    pub derived_support: PatternSet,
    pub abelianization_order: usize,
    pub class_count: usize,
}

impl<'a> PatternGroup<'a> {
    pub fn new(grp: &'a UnitriGroup, j: PatternSet, budget: usize) -> Result<Self> {
        Self::quotient(grp, j, PatternSet::empty(j.n()), budget)
    }

    pub fn quotient(grp: &'a UnitriGroup, j: PatternSet, n: PatternSet, budget: usize) -> Result<Self> {
        if !j.is_closed() || !n.is_closed() || !n.is_subset(&j) || !n.is_normal_in(&j) {
            return Err(Error::NotClosed);
        }
        let free = j.difference(&n).to_vec();
        let order = (grp.q() as u128)
            .checked_pow(free.len() as u32)
            .filter(|&o| o <= budget as u128)
            .ok_or(Error::BudgetExceeded { order: (grp.q() as u128).saturating_pow(free.len() as u32), cap: budget })?;
        Ok(PatternGroup { grp, j, n, free, order: order as usize })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn free_positions(&self) -> &[RootPos] {
        &self.free
    }

    pub fn decode(&self, mut idx: usize) -> GroupElement {
        let q = self.grp.q() as usize;
        let mut u = self.grp.identity();
        for &p in &self.free {
            u.set(p, FieldElement((idx % q) as u16));
            idx /= q;
        }
        u
    }

    pub fn encode(&self, u: &GroupElement) -> usize {
        let q = self.grp.q() as usize;
        self.free.iter().rev().fold(0, |acc, &p| acc * q + u.get(p).code() as usize)
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.encode(&self.grp.mul(&self.decode(x), &self.decode(y)))
    }

    pub fn inv(&self, x: usize) -> usize {
        self.encode(&self.grp.inv(&self.decode(x)))
    }

    /// Root elements `x_p(α)`, `p ∈ J ∖ N`, `α` over an additive basis.
    pub fn generators(&self) -> Vec<usize> {
        let gens = self.grp.field().additive_generators();
        self.free
            .iter()
            .flat_map(|&p| gens.iter().map(move |&a| self.encode(&self.grp.root_element(p, a))))
            .collect()
    }

    /// The subgroup generated by `seeds` and all their conjugates, as a membership table.
    pub fn normal_closure(&self, seeds: &[usize]) -> Vec<bool> {
        let gens = self.generators();
        let mut members = vec![false; self.order];
        members[0] = true;
        let mut list = vec![0];
        let mut normal_gens: Vec<usize> = Vec::new();
        let mut pending: Vec<usize> = seeds.to_vec();
        while let Some(s) = pending.pop() {
            if members[s] {
                continue;
            }
            normal_gens.push(s);
            let mut stack = list.clone();
            while let Some(x) = stack.pop() {
                for &t in &normal_gens {
                    let y = self.mul(x, t);
                    if !members[y] {
                        members[y] = true;
                        list.push(y);
                        stack.push(y);
                    }
                }
            }
            for &g in &gens {
                let conj = self.mul(self.mul(self.inv(g), s), g);
                if !members[conj] {
                    pending.push(conj);
                }
            }
        }
        members
    }

    /// The commutator subgroup.
    pub fn derived(&self) -> Vec<bool> {
        let gens = self.generators();
        let mut seeds = Vec::new();
        for &x in &gens {
            for &y in &gens {
                let c = self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y));
                if c != 0 {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(&seeds)
    }

    /// Number of conjugacy classes.
    pub fn class_count(&self) -> usize {
        let gens: Vec<(usize, usize)> = self.generators().into_iter().map(|g| (g, self.inv(g))).collect();
        let mut seen = vec![false; self.order];
        let mut classes = 0;
        for start in 0..self.order {
            if seen[start] {
                continue;
            }
            classes += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &(g, gi) in &gens {
                    let y = self.mul(self.mul(gi, x), g);
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        classes
    }

    pub fn stats(&self) -> PatternGroupStats {
        let derived = self.derived();
        let elems: Vec<usize> = (0..self.order).filter(|&x| derived[x]).collect();
        let mut support = PatternSet::empty(self.j.n());
        for &x in &elems {
            for p in self.decode(x).support() {
                support.insert(p);
            }
        }
        let derived_order = elems.len();
        PatternGroupStats {
            order: self.order,
            derived_order,
            derived_support: support,
            abelianization_order: self.order / derived_order,
            class_count: self.class_count(),
        }
    }

    pub fn contains_root_subgroup(&self, members: &[bool], p: RootPos) -> bool {
        self.grp.field().elements().all(|a| members[self.encode(&self.grp.root_element(p, a))])
    }

    pub fn modulus(&self) -> &PatternSet {
        &self.n
    }
}

/// Every element of `U_J` (for sets small enough to list).
pub fn elements_of(grp: &UnitriGroup, j: &PatternSet, budget: usize) -> Result<Vec<GroupElement>> {
    let pg = PatternGroup::new(grp, *j, budget)?;
    Ok((0..pg.order()).map(|i| pg.decode(i)).collect())
}

/// Conjugates of root generators of `U_N` by root generators of `U_J` stay in `U_N`.
pub fn is_normal_by_generators(grp: &UnitriGroup, j: &PatternSet, n: &PatternSet) -> bool {
    let f = grp.field();
    let gens = f.additive_generators();
    for x in j.iter() {
        for y in n.iter() {
            for &a in &gens {
                for &b in &gens {
                    let gx = grp.root_element(x, a);
                    let gy = grp.root_element(y, b);
                    let conj = grp.mul(&grp.mul(&grp.inv(&gx), &gy), &gx);
                    if !conj.support().iter().all(|p| n.contains(*p)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Commutators of root generators of `U_J` with those of `U_K` lie in `U_N`.
pub fn commutators_within(grp: &UnitriGroup, j: &PatternSet, k: &PatternSet, n: &PatternSet) -> bool {
    let gens = grp.field().additive_generators();
    let mut seen = HashSet::new();
    for x in j.iter() {
        for y in k.iter() {
            if !seen.insert((x, y)) {
                continue;
            }
            for &a in &gens {
                for &b in &gens {
                    let c = grp.commutator(&grp.root_element(x, a), &grp.root_element(y, b));
                    if !c.support().iter().all(|p| n.contains(*p)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
