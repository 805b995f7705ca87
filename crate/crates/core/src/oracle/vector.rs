//! Vectors of the orbit modules with exact cyclotomic coordinates, and the linear
//! extension of the monomial action.

use std::collections::BTreeMap;

use super::cyc::CycNumber;
use super::rank::cyclotomic_rank;
use crate::action::{GroupElement, NilMatrix, ScaledIdempotent, UnitriGroup};
use crate::error::Result;
use crate::field::FieldElement;
use crate::roots::RootPos;

/// `Σ c_k g_k` in the group ring.
pub type FormalSum = Vec<(CycNumber, GroupElement)>;

/// A vector `Σ c_B [B]`; zero coordinates are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitVector {
    p: u32,
    coords: BTreeMap<NilMatrix, CycNumber>,
}

impl OrbitVector {
    pub fn zero(p: u32) -> Self {
        OrbitVector { p, coords: BTreeMap::new() }
    }

    pub fn basis(p: u32, a: NilMatrix) -> Self {
        let mut v = Self::zero(p);
        v.coords.insert(a, CycNumber::one(p));
        v
    }

    pub fn coords(&self) -> &BTreeMap<NilMatrix, CycNumber> {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add_term(&mut self, label: NilMatrix, c: CycNumber) {
        let slot = self.coords.entry(label).or_insert_with(|| CycNumber::zero(self.p));
        slot.add_assign(&c);
        if slot.is_zero() {
            self.coords.retain(|_, v| !v.is_zero());
        }
    }

    fn apply_with(&self, x: &FormalSum, act: impl Fn(&ScaledIdempotent, &GroupElement) -> Result<ScaledIdempotent>) -> Result<Self> {
        let mut out = Self::zero(self.p);
        for (label, c) in &self.coords {
            let s = ScaledIdempotent::unscaled(label.clone());
            for (k, g) in x {
                let img = act(&s, g)?;
                out.add_term(img.matrix, c.mul(k).mul_zeta(img.exponent));
            }
        }
        Ok(out)
    }

    /// `v · x`.
    pub fn apply_right(&self, grp: &UnitriGroup, x: &FormalSum) -> Result<Self> {
        self.apply_with(x, |s, g| grp.act_right_elem(s, g))
    }

    /// `x · v`.
    pub fn apply_left(&self, grp: &UnitriGroup, x: &FormalSum) -> Result<Self> {
        self.apply_with(x, |s, g| grp.act_left_elem(g, s))
    }
}

pub fn single(p: u32, g: GroupElement) -> FormalSum {
    vec![(CycNumber::one(p), g)]
}

/// `q·f^β_{ab} = Σ_α θ(-βα) x_{ab}(α)`.
pub fn scaled_f(grp: &UnitriGroup, pos: RootPos, beta: FieldElement) -> FormalSum {
    let f = grp.field();
    f.elements()
        .map(|alpha| {
            let e = f.theta_exponent(f.neg(f.mul(beta, alpha)));
            (CycNumber::zeta_pow(f.p(), e), grp.root_element(pos, alpha))
        })
        .collect()
}

/// Rank of a family of vectors over `Q(ζ_p)`.
pub fn rank(vectors: &[OrbitVector], p: u32) -> Result<usize> {
    let mut labels: Vec<&NilMatrix> = vectors.iter().flat_map(|v| v.coords.keys()).collect();
    labels.sort();
    labels.dedup();
    let index: BTreeMap<&NilMatrix, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let rows: Vec<Vec<CycNumber>> = vectors
        .iter()
        .map(|v| {
            let mut row = vec![CycNumber::zero(p); labels.len()];
            for (l, c) in &v.coords {
                row[index[l]] = c.clone();
            }
            row
        })
        .collect();
    cyclotomic_rank(&rows, p)
}
