//! Brute-force confirmations of the structural statements about orbit modules.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::cyc::CycNumber;
use super::pattern::{commutators_within, is_normal_by_generators, PatternGroup, PatternGroupStats};
use super::rank::cyclotomic_rank;
use super::vector::{rank, scaled_f, single, OrbitVector};
use crate::action::{NilMatrix, ScaledIdempotent, Side, UnitriGroup};
use crate::error::{violation, Error, Result};
use crate::field::FieldElement;
use crate::minimal::{analyze_shape, is_hook_disconnected, perp, side_sets, upsilon_sigma, LinearCharSpec};
use crate::orbit::{orbit_bfs, orbit_intersection_size, Orbit, VergeData};
use crate::roots::{PatternSet, RootPos};

/// `dim Hom(CO^r_A, CO^r_A) = |O^l_A ∩ O^r_A|`, required to equal `q^b`.
pub fn hom_dimension(g: &UnitriGroup, v: &VergeData, cap: usize) -> Result<usize> {
    let r = orbit_intersection_size(g, v, cap)?;
    if !r.holds() {
        return Err(violation(format!("|O^l ∩ O^r| = {} but q^b = {} (description match {})", r.bfs, r.formula, r.description_matches)));
    }
    Ok(r.bfs)
}

/// `O^l_A ∩ O^r_B = ∅` for all distinct verges `A, B` of the given list.
pub fn distinct_verges_disjoint(g: &UnitriGroup, verges: &[VergeData], cap: usize) -> Result<bool> {
    let mut lefts: Vec<Orbit> = Vec::new();
    let mut rights: Vec<Orbit> = Vec::new();
    for v in verges {
        lefts.push(orbit_bfs(g, &v.to_matrix(), Side::Left, cap)?);
        rights.push(orbit_bfs(g, &v.to_matrix(), Side::Right, cap)?);
    }
    for (x, l) in lefts.iter().enumerate() {
        for (y, r) in rights.iter().enumerate() {
            if x != y && l.intersection_len(r) != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Irreducible degrees of `H = U_{L̂⁻}/U_{L°}` as `q^m ↦ n_m`, plus the data that fixes them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeMultiset {
    pub h: PatternGroupStats,
    pub b: usize,
    pub c: usize,
    pub multiplicities: BTreeMap<usize, u128>,
}

impl DegreeMultiset {
    /// `Σ n_m q^{2m}`.
    pub fn weighted_sum(&self, q: u32) -> u128 {
        self.multiplicities.iter().map(|(&m, &k)| k * (q as u128).pow(2 * m as u32)).sum()
    }
}

pub fn degree_multiset(g: &UnitriGroup, v: &VergeData, budget: usize) -> Result<DegreeMultiset> {
    let shape = analyze_shape(v.main())?;
    if !shape.disconnected {
        return Err(Error::HookConnected);
    }
    if shape.b > 5 {
        return Err(Error::BTooLarge(shape.b));
    }
    let sides = side_sets(v.main());
    let h = PatternGroup::quotient(g, sides.lhat_minus, sides.lo, budget)?.stats();
    let q = g.q() as u128;
    let qb = q.pow(shape.b as u32);
    if h.order as u128 != qb {
        return Err(violation(format!("|H| = {} but q^b = {qb}", h.order)));
    }
    // n_0 + n_1 + n_2 = k(H), n_0 + q² n_1 + q⁴ n_2 = q^b, n_0 = |H/H'|
    let n0 = h.abelianization_order as i128;
    let k = h.class_count as i128;
    let (q2, q4) = ((q * q) as i128, (q * q * q * q) as i128);
    let rest = qb as i128 - n0 - q2 * (k - n0);
    if rest % (q4 - q2) != 0 {
        return Err(violation("degree equations have no integral solution"));
    }
    let n2 = rest / (q4 - q2);
    let n1 = k - n0 - n2;
    if n1 < 0 || n2 < 0 || (shape.b < 4 && n2 != 0) || (shape.b < 2 && n1 != 0) {
        return Err(violation(format!("degree equations give n_1 = {n1}, n_2 = {n2} for b = {}", shape.b)));
    }
    let mut multiplicities = BTreeMap::new();
    for (m, nm) in [(0usize, n0), (1, n1), (2, n2)] {
        if nm > 0 {
            multiplicities.insert(m, nm as u128);
        }
    }
    Ok(DegreeMultiset { h, b: shape.b, c: shape.c, multiplicities })
}

/// For connected verges: some main condition `(i,j)` has `X_{ij}` inside the commutator
/// subgroup of `U_{L̂}` while `θ_A` is nontrivial on it, so `[A]` admits no linear
/// character of `U_{L̂}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorCertificate {
    pub fired: bool,
    pub witnesses: Vec<RootPos>,
    pub derived_support: PatternSet,
}

pub fn no_linear_character_check(g: &UnitriGroup, v: &VergeData, budget: usize) -> Result<CommutatorCertificate> {
    if is_hook_disconnected(v.main()) {
        return Err(Error::HookDisconnected);
    }
    let sides = side_sets(v.main());
    let pg = PatternGroup::new(g, sides.lhat, budget)?;
    let derived = pg.derived();
    let mut support = PatternSet::empty(g.n());
    for x in (0..pg.order()).filter(|&x| derived[x]) {
        for p in pg.decode(x).support() {
            support.insert(p);
        }
    }
    let f = g.field();
    let witnesses: Vec<RootPos> = v
        .values()
        .iter()
        .filter(|&&(p, val)| pg.contains_root_subgroup(&derived, p) && f.elements().any(|a| f.theta_exponent(f.mul(val, a)) != 0))
        .map(|&(p, _)| p)
        .collect();
    Ok(CommutatorCertificate { fired: !witnesses.is_empty(), witnesses, derived_support: support })
}

/// `U_{L°}, U_L ⊴ U_{L̂}` with `U_L/U_{L°}` central, and the mirror statements on the right.
pub fn normality_checks(g: &UnitriGroup, v: &VergeData) -> Result<()> {
    let s = side_sets(v.main());
    for (name, big, mid, small) in [("left", s.lhat, s.l, s.lo), ("right", s.rhat, s.r, s.ro)] {
        for sub in [small, mid] {
            if !sub.is_normal_in(&big) || !is_normal_by_generators(g, &big, &sub) {
                return Err(violation(format!("{name}: {sub:?} is not normal in {big:?}")));
            }
        }
        if !commutators_within(g, &big, &mid, &small) {
            return Err(violation(format!("{name}: the middle quotient is not central")));
        }
    }
    Ok(())
}

/// The projective stabilizer of `[A]` in `U` is exactly `U_R`, acting through `θ_A`.
pub fn stabilizer_check(g: &UnitriGroup, v: &VergeData) -> Result<()> {
    let f = g.field();
    let a = ScaledIdempotent::unscaled(v.to_matrix());
    let r = side_sets(v.main()).r;
    for u in g.all_elements() {
        let img = g.act_right_elem(&a, &u)?;
        let stab = img.matrix == a.matrix;
        let in_r = u.support().iter().all(|&p| r.contains(p));
        if stab != in_r {
            return Err(violation(format!("stabilizer membership of {u:?} is {stab}, U_R membership {in_r}")));
        }
        if stab {
            let s = v.values().iter().fold(FieldElement::ZERO, |acc, &(p, val)| f.add(acc, f.mul(val, u.get(p))));
            if img.exponent != f.theta_exponent(s) {
                return Err(violation(format!("{u:?} stabilizes [A] with the wrong scalar")));
            }
        }
    }
    Ok(())
}

/// `q f^β_{ri}[A] = [A] q f^{β/σ}_{sj}` for every hat position and every `β`. Returns the
/// number of identities checked.
pub fn idempotent_transfer_check(g: &UnitriGroup, v: &VergeData) -> Result<usize> {
    let f = g.field();
    let p = f.p();
    let s = side_sets(v.main());
    let base = OrbitVector::basis(p, v.to_matrix());
    let mut checked = 0;
    for hat in s.lhat.difference(&s.l).iter() {
        let target = perp(hat, v.main())?;
        let sigma = upsilon_sigma(f, v, hat)?;
        for beta in f.elements() {
            let lhs = base.apply_left(g, &scaled_f(g, hat, beta))?;
            let shifted = f.div(beta, sigma).expect("σ is nonzero");
            let rhs = base.apply_right(g, &scaled_f(g, target, shifted))?;
            if lhs != rhs {
                return Err(violation(format!("idempotent identity fails at {hat} for β = {beta}")));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Dimension data for `[A] f^β_{sj} CU`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentRankReport {
    pub hat: RootPos,
    pub target: RootPos,
    pub beta: FieldElement,
    pub nonzero: bool,
    /// Rank of `{[A] q f^β_{sj} u : u ∈ U}`.
    pub rank_span: usize,
    /// Rank of `{[A] q f^β_{sj} u : u ∈ C_{Γ'}}`, a set of `q^{a-1}` vectors.
    pub rank_basis: usize,
    pub basis_size: usize,
    pub expected: u128,
}

impl IdempotentRankReport {
    pub fn holds(&self) -> bool {
        self.nonzero
            && self.rank_span as u128 == self.expected
            && self.rank_basis as u128 == self.expected
            && self.basis_size as u128 == self.expected
    }
}

/// `Π_{γ ∈ Γ} X_γ` in the fixed factorization order.
fn coset_reps(g: &UnitriGroup, gamma: &PatternSet) -> Vec<crate::action::GroupElement> {
    let order: Vec<RootPos> = g.factor_order().into_iter().filter(|p| gamma.contains(*p)).collect();
    let q = g.q() as usize;
    let total = q.pow(order.len() as u32);
    (0..total)
        .map(|mut idx| {
            let factors: Vec<(RootPos, FieldElement)> = order
                .iter()
                .map(|&p| {
                    let a = FieldElement((idx % q) as u16);
                    idx /= q;
                    (p, a)
                })
                .collect();
            g.product(&factors)
        })
        .collect()
}

pub fn idempotent_rank(g: &UnitriGroup, v: &VergeData, hat: RootPos, beta: FieldElement) -> Result<IdempotentRankReport> {
    let p = g.field().p();
    let target = perp(hat, v.main())?;
    let w = OrbitVector::basis(p, v.to_matrix()).apply_right(g, &scaled_f(g, target, beta))?;
    let span: Vec<OrbitVector> = g.all_elements().map(|u| w.apply_right(g, &single(p, u))).collect::<Result<_>>()?;
    let mut gamma_prime = v.main().legs();
    gamma_prime.remove(target);
    let basis: Vec<OrbitVector> =
        coset_reps(g, &gamma_prime).into_iter().map(|u| w.apply_right(g, &single(p, u))).collect::<Result<_>>()?;
    Ok(IdempotentRankReport {
        hat,
        target,
        beta,
        nonzero: !w.is_zero(),
        rank_span: rank(&span, p)?,
        rank_basis: rank(&basis, p)?,
        basis_size: basis.len(),
        expected: (g.q() as u128).pow(v.a() as u32 - 1),
    })
}

/// Dimension of `{w ∈ CO^r_A : w u = λ(u) w for u ∈ U_{R̂}}`; Frobenius reciprocity makes it
/// the multiplicity of the constituent induced from the source.
pub fn source_eigenspace_dim(g: &UnitriGroup, v: &VergeData, src: &LinearCharSpec, cap: usize) -> Result<usize> {
    let f = g.field();
    let p = f.p();
    let orbit = orbit_bfs(g, &v.to_matrix(), Side::Right, cap)?.sorted_members();
    let index: HashMap<&NilMatrix, usize> = orbit.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let gens: Vec<_> = src
        .domain
        .iter()
        .flat_map(|pos| f.additive_generators().into_iter().map(move |a| (pos, a)))
        .map(|(pos, a)| g.root_element(pos, a))
        .collect();
    let width = orbit.len() * gens.len();
    let mut rows = Vec::with_capacity(orbit.len());
    for (bi, b) in orbit.iter().enumerate() {
        let mut row = vec![CycNumber::zero(p); width];
        for (k, u) in gens.iter().enumerate() {
            let img = g.act_right_elem(&ScaledIdempotent::unscaled(b.clone()), u)?;
            let col = k * orbit.len() + index[&img.matrix];
            row[col].add_assign(&CycNumber::zeta_pow(p, img.exponent));
            let lam = CycNumber::zeta_pow(p, src.exponent(f, u));
            row[k * orbit.len() + bi] = row[k * orbit.len() + bi].sub(&lam);
        }
        rows.push(row);
    }
    Ok(orbit.len() - cyclotomic_rank(&rows, p)?)
}

/// `Σ_β rank([A] f^β_{sj} CU) = q^a`: the idempotents split the orbit module.
pub fn idempotent_split(g: &UnitriGroup, v: &VergeData, hat: RootPos) -> Result<usize> {
    let mut total = 0;
    for beta in g.field().elements() {
        total += idempotent_rank(g, v, hat, beta)?.rank_span;
    }
    Ok(total)
}

/// All verges of `U_n(q)` with every value choice.
pub fn all_verges(g: &UnitriGroup, cap: usize) -> Result<Vec<VergeData>> {
    let mut out = Vec::new();
    let nz: Vec<FieldElement> = g.field().nonzero_elements().collect();
    for p in crate::census::enumerate_main_sets(g.n(), cap)? {
        let ps: Vec<RootPos> = p.iter().collect();
        let total = nz.len().pow(ps.len() as u32);
        for mut idx in 0..total {
            let vals: Vec<(RootPos, FieldElement)> = ps
                .iter()
                .map(|&x| {
                    let v = nz[idx % nz.len()];
                    idx /= nz.len();
                    (x, v)
                })
                .collect();
            out.push(VergeData::new(g.n(), vals)?);
        }
    }
    Ok(out)
}

/// Number of conjugacy classes of `U_n(q)`.
pub fn class_count(g: &UnitriGroup, budget: usize) -> Result<usize> {
    Ok(PatternGroup::new(g, PatternSet::full(g.n()), budget)?.class_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::minimal::monomial_sources;
    use crate::roots::MainConditionSet;
    use std::sync::Arc;

    const CAP: usize = 1 << 20;

    fn group(n: usize, p: u32, k: u32) -> UnitriGroup {
        UnitriGroup::new(n, Arc::new(FieldSpec::new(p, k, None).unwrap())).unwrap()
    }

    fn rp(i: usize, j: usize) -> RootPos {
        RootPos::new(i, j)
    }

    fn verge(n: usize, e: &[(usize, usize, u16)]) -> VergeData {
        VergeData::new(n, e.iter().map(|&(i, j, v)| (rp(i, j), FieldElement(v)))).unwrap()
    }

    #[test]
    fn hom_dimension_examples() {
        let g = group(4, 2, 1);
        assert_eq!(hom_dimension(&g, &verge(4, &[(3, 1, 1)]), CAP).unwrap(), 1);
        assert_eq!(hom_dimension(&g, &verge(4, &[(3, 1, 1), (4, 2, 1)]), CAP).unwrap(), 2);
        assert!(distinct_verges_disjoint(&g, &all_verges(&g, 8).unwrap(), CAP).unwrap());
    }

    #[test]
    fn degree_multiset_examples() {
        let g = group(4, 2, 1);
        let d = degree_multiset(&g, &verge(4, &[(3, 1, 1)]), CAP).unwrap();
        assert_eq!(d.multiplicities, BTreeMap::from([(0, 1)]));
        let g = group(4, 3, 1);
        let d = degree_multiset(&g, &verge(4, &[(3, 1, 1), (4, 2, 1)]), CAP).unwrap();
        assert_eq!(d.multiplicities, BTreeMap::from([(0, 3)]));
        let g = group(5, 2, 1);
        assert_eq!(degree_multiset(&g, &verge(5, &[(3, 1, 1), (4, 2, 1), (5, 3, 1)]), CAP), Err(Error::HookConnected));
    }

    #[test]
    fn heisenberg_shaped_quotient() {
        // find a disconnected shape with b = 3 and c = 2 and read off its degrees
        let g = group(6, 2, 1);
        let shape = crate::census::enumerate_main_sets(6, 8)
            .unwrap()
            .into_iter()
            .find(|p| {
                let s = analyze_shape(p).unwrap();
                s.disconnected && s.b == 3 && s.c == 2
            })
            .expect("a b = 3, c = 2 shape exists at n = 6");
        let d = degree_multiset(&g, &VergeData::ones(shape), CAP).unwrap();
        assert_eq!(d.multiplicities, BTreeMap::from([(0, 4), (1, 1)]));
    }

    #[test]
    fn commutator_certificate() {
        let g = group(5, 2, 1);
        let c = no_linear_character_check(&g, &verge(5, &[(3, 1, 1), (4, 2, 1), (5, 3, 1)]), CAP).unwrap();
        assert!(c.fired);
        assert_eq!(c.witnesses, vec![rp(5, 3)]);
        assert_eq!(no_linear_character_check(&g, &verge(5, &[(3, 1, 1)]), CAP), Err(Error::HookDisconnected));
        let g = group(6, 2, 1);
        assert!(no_linear_character_check(&g, &verge(6, &[(6, 3, 1), (3, 1, 1), (5, 2, 1)]), CAP).unwrap().fired);
    }

    #[test]
    fn normality_and_stabilizers() {
        let g = group(4, 2, 1);
        for v in all_verges(&g, 8).unwrap() {
            normality_checks(&g, &v).unwrap();
            stabilizer_check(&g, &v).unwrap();
        }
        let g = group(5, 2, 1);
        for p in crate::census::enumerate_main_sets(5, 8).unwrap() {
            normality_checks(&g, &VergeData::ones(p)).unwrap();
        }
    }

    #[test]
    fn idempotent_identities() {
        for g in [group(4, 2, 1), group(4, 3, 1)] {
            for v in all_verges(&g, 8).unwrap() {
                let n = idempotent_transfer_check(&g, &v).unwrap();
                assert_eq!(n, v.b() * g.q() as usize);
            }
        }
    }

    #[test]
    fn idempotent_rank_example() {
        let g = group(4, 2, 1);
        let v = verge(4, &[(3, 1, 1), (4, 2, 1)]);
        for beta in [FieldElement(0), FieldElement(1)] {
            let r = idempotent_rank(&g, &v, rp(4, 3), beta).unwrap();
            assert_eq!(r.target, rp(2, 1));
            assert_eq!((r.rank_span, r.rank_basis, r.basis_size), (2, 2, 2));
            assert!(r.holds());
        }
        assert_eq!(idempotent_split(&g, &v, rp(4, 3)).unwrap(), 4);
        let g = group(4, 3, 1);
        let v = verge(4, &[(3, 1, 2), (4, 2, 1)]);
        for beta in g.field().elements() {
            assert!(idempotent_rank(&g, &v, rp(4, 3), beta).unwrap().holds());
        }
    }

    #[test]
    fn sources_have_one_dimensional_eigenspaces() {
        for g in [group(4, 2, 1), group(4, 3, 1), group(5, 2, 1)] {
            for p in crate::census::enumerate_main_sets(g.n(), 8).unwrap() {
                if !is_hook_disconnected(&p) {
                    continue;
                }
                let v = VergeData::ones(p);
                for src in monomial_sources(g.field(), &v, CAP).unwrap().sources {
                    assert_eq!(source_eigenspace_dim(&g, &v, &src, CAP).unwrap(), 1, "{p:?} {src:?}");
                }
            }
        }
    }

    #[test]
    fn class_counts() {
        assert_eq!(class_count(&group(3, 2, 1), CAP).unwrap(), 5);
        assert_eq!(class_count(&group(3, 3, 1), CAP).unwrap(), 11);
        assert_eq!(class_count(&group(4, 2, 1), CAP).unwrap(), 16);
    }

    #[test]
    fn empty_shape_is_fine() {
        let g = group(3, 2, 1);
        let v = VergeData::ones(MainConditionSet::empty(3));
        assert_eq!(hom_dimension(&g, &v, CAP).unwrap(), 1);
        assert_eq!(idempotent_transfer_check(&g, &v).unwrap(), 0);
    }
}
