//! Minimal-degree constituents of orbit modules: the pattern sets around a verge, the
//! hook-disconnectedness criterion, the count `q^c`, the shift `Υ` and monomial sources.

use serde::Serialize;

use crate::action::{GroupElement, ScaledIdempotent, UnitriGroup};
use crate::error::{violation, Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::orbit::VergeData;
use crate::roots::{hook, hook_meeting, positions, MainConditionSet, PatternSet, RootPos};

/// The pattern sets attached to a set of main conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideSets {
    pub lo: PatternSet,
    pub l: PatternSet,
    pub lhat: PatternSet,
    pub lhat_minus: PatternSet,
    pub ro: PatternSet,
    pub r: PatternSet,
    pub rhat: PatternSet,
    pub rhat_minus: PatternSet,
    pub i_left: PatternSet,
    pub i_right: PatternSet,
}

/// `base ∪ {(i,b) ∈ within : (i,a),(a,b) ∈ within ∖ base}`.
fn commutator_support(within: &PatternSet, base: &PatternSet) -> PatternSet {
    let top = within.difference(base);
    let mut out = *base;
    for p in within.iter() {
        if (p.j + 1..p.i).any(|a| top.contains(RootPos::new(p.i, a)) && top.contains(RootPos::new(a, p.j))) {
            out.insert(p);
        }
    }
    out
}

pub fn side_sets(p: &MainConditionSet) -> SideSets {
    let n = p.n();
    let pset = *p.as_set();
    let mut lo = PatternSet::empty(n);
    let mut ro = PatternSet::empty(n);
    for x in positions(n) {
        match p.in_row(x.i) {
            None => lo.insert(x),
            Some(m) if x.j < m.j => lo.insert(x),
            _ => {}
        }
        match p.in_column(x.j) {
            None => ro.insert(x),
            Some(m) if x.i > m.i => ro.insert(x),
            _ => {}
        }
    }
    let l = lo.union(&pset);
    let r = ro.union(&pset);
    let mut lhat = l;
    let mut rhat = r;
    for h in p.hook_intersections() {
        lhat.insert(RootPos::new(h.upper.i, h.lower.i));
        rhat.insert(RootPos::new(h.upper.j, h.lower.j));
    }
    let lhat_minus = lhat.difference(&pset);
    let rhat_minus = rhat.difference(&pset);
    SideSets {
        i_left: commutator_support(&lhat_minus, &lo),
        i_right: commutator_support(&rhat_minus, &ro),
        lo,
        l,
        lhat,
        lhat_minus,
        ro,
        r,
        rhat,
        rhat_minus,
    }
}

impl SideSets {
    /// `|L̂⁻ ∖ I|`.
    pub fn c_left(&self) -> usize {
        self.lhat_minus.difference(&self.i_left).len()
    }

    /// `|R̂⁻ ∖ I|` on the right side.
    pub fn c_right(&self) -> usize {
        self.rhat_minus.difference(&self.i_right).len()
    }

    /// The closure facts every verge must satisfy; the hat-minus sets only when disconnected.
    pub fn check_closure(&self, disconnected: bool) -> Result<()> {
        let mut named = vec![
            ("L°", &self.lo),
            ("L", &self.l),
            ("L̂", &self.lhat),
            ("R°", &self.ro),
            ("R", &self.r),
            ("R̂", &self.rhat),
        ];
        if disconnected {
            named.push(("L̂⁻", &self.lhat_minus));
            named.push(("R̂⁻", &self.rhat_minus));
        }
        for (name, s) in named {
            if let Some((x, y)) = s.closure_failure() {
                return Err(violation(format!("{name} is not closed: {x} and {y} in it but not their product")));
            }
        }
        Ok(())
    }
}

/// `(r,i) ↦ (s,j)` for main conditions `(i,j), (r,s)` with `j < s < i < r`.
pub fn perp(pos: RootPos, p: &MainConditionSet) -> Result<RootPos> {
    p.hook_intersections()
        .into_iter()
        .find(|h| RootPos::new(h.upper.i, h.lower.i) == pos)
        .map(|h| RootPos::new(h.upper.j, h.lower.j))
        .ok_or(Error::NotAHatPosition(pos))
}

/// `σ = A_{rs} / A_{ij}` for the hat position `(r,i)`.
pub fn upsilon_sigma(f: &FieldSpec, v: &VergeData, pos: RootPos) -> Result<FieldElement> {
    let h = v
        .main()
        .hook_intersections()
        .into_iter()
        .find(|h| RootPos::new(h.upper.i, h.lower.i) == pos)
        .ok_or(Error::NotAHatPosition(pos))?;
    let tau = v.value(h.upper).expect("condition has a value");
    let rho = v.value(h.lower).expect("condition has a value");
    Ok(f.div(tau, rho).expect("verge values are nonzero"))
}

/// How the hook at `rho` is allowed to count as meeting the hook at `nu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhoReading {
    /// `ρ` ranges over conditions other than the two under test.
    Others,
    /// `ρ` may coincide with one of them; a hook meets itself in one position only when
    /// it is a single position.
    All,
}

fn meets_once(rho: RootPos, nu: RootPos) -> bool {
    if rho == nu {
        hook(rho).0.is_empty()
    } else {
        hook_meeting(rho, nu).is_some()
    }
}

/// Connectedness read off the definition: a pair meeting at the diagonal and a third hook
/// meeting both inside the triangle.
pub fn is_hook_disconnected_literal(p: &MainConditionSet, reading: RhoReading) -> bool {
    let ps: Vec<RootPos> = p.iter().collect();
    for (x, &nu) in ps.iter().enumerate() {
        for &mu in &ps[x + 1..] {
            if nu.j != mu.i && mu.j != nu.i {
                continue;
            }
            let witness = ps.iter().any(|&rho| {
                let allowed = reading == RhoReading::All || (rho != nu && rho != mu);
                allowed && meets_once(rho, nu) && meets_once(rho, mu)
            });
            if witness {
                return false;
            }
        }
    }
    true
}

/// Connectedness via commutators: some main condition lies in `D(L̂)`.
pub fn is_hook_disconnected_derived(p: &MainConditionSet) -> bool {
    let s = side_sets(p);
    s.lhat.derived().intersection(p.as_set()).is_empty()
}

pub fn is_hook_disconnected(p: &MainConditionSet) -> bool {
    is_hook_disconnected_literal(p, RhoReading::All)
}

/// Value-independent part of the analysis of a set of main conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeReport {
    pub disconnected: bool,
    pub k: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub c_right: usize,
}

pub fn analyze_shape(p: &MainConditionSet) -> Result<ShapeReport> {
    let literal = is_hook_disconnected_literal(p, RhoReading::All);
    if literal != is_hook_disconnected_literal(p, RhoReading::Others) {
        return Err(violation(format!("the two readings of connectedness disagree on {p:?}")));
    }
    if literal != is_hook_disconnected_derived(p) {
        return Err(violation(format!("connectedness and the commutator criterion disagree on {p:?}")));
    }
    let s = side_sets(p);
    s.check_closure(literal)?;
    let b = p.intersection_count();
    if s.lhat.difference(&s.l).len() != b || s.rhat.difference(&s.r).len() != b {
        return Err(violation(format!("hat differences do not have size b on {p:?}")));
    }
    let (c, c_right) = (s.c_left(), s.c_right());
    if literal && (c != c_right || c > b) {
        return Err(violation(format!("c from the left ({c}) and right ({c_right}) disagree or exceed b on {p:?}")));
    }
    Ok(ShapeReport { disconnected: literal, k: p.len(), a: p.arm_total(), b, c, c_right })
}

/// Summary of the minimal-degree constituents of a verge's orbit module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub disconnected: bool,
    pub k: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub minimal_dim_exponent: usize,
    /// `q^c` when disconnected, `0` otherwise.
    pub count_minimal: u128,
    /// Every minimal constituent occurs with multiplicity one.
    pub multiplicity: u32,
    /// Constituent dimensions lie between `q^{a-b}` and `q^{a-⌈b/2⌉}`.
    pub dim_exponent_bounds: (usize, usize),
}

pub fn analyze(f: &FieldSpec, v: &VergeData) -> Result<MinimalityReport> {
    let s = analyze_shape(v.main())?;
    let count_minimal = if s.disconnected {
        (f.q() as u128).checked_pow(s.c as u32).ok_or(Error::Overflow("q^c"))?
    } else {
        0
    };
    Ok(MinimalityReport {
        disconnected: s.disconnected,
        k: s.k,
        a: s.a,
        b: s.b,
        c: s.c,
        minimal_dim_exponent: s.a - s.b,
        count_minimal,
        multiplicity: 1,
        dim_exponent_bounds: (s.a - s.b, s.a - s.b.div_ceil(2)),
    })
}

/// Image of a root element of `U_{L̂}` under `Υ`: trivial on `L°`, identity on `P`, and
/// `x_{ri}(α) ↦ x_{sj}(ασ)` on the hat positions.
pub fn upsilon_root(g: &UnitriGroup, v: &VergeData, sides: &SideSets, pos: RootPos, alpha: FieldElement) -> Result<GroupElement> {
    if sides.lo.contains(pos) {
        Ok(g.identity())
    } else if v.main().contains(pos) {
        Ok(g.root_element(pos, alpha))
    } else {
        let target = perp(pos, v.main())?;
        let sigma = upsilon_sigma(g.field(), v, pos)?;
        Ok(g.root_element(target, g.field().mul(alpha, sigma)))
    }
}

/// `Υ(u)` for `u ∈ U_{L̂}`, through the fixed factorization.
pub fn upsilon(g: &UnitriGroup, v: &VergeData, sides: &SideSets, u: &GroupElement) -> Result<GroupElement> {
    let mut out = g.identity();
    for (p, alpha) in g.factor(u) {
        if alpha.is_zero() {
            continue;
        }
        if !sides.lhat.contains(p) {
            return Err(Error::NotAHatPosition(p));
        }
        out = g.mul(&out, &upsilon_root(g, v, sides, p, alpha)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct UpsilonReport {
    pub root_checks: usize,
    pub commutator_checks: usize,
    pub failures: Vec<String>,
}

impl UpsilonReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `x_{ri}(α)[A] = [A]x_{sj}(ασ)` on every hat position and every `α`, and for
/// disconnected verges that `Υ` respects commutators of root elements of `U_{L̂}` when
/// evaluated on `[A]`.
pub fn verify_upsilon(g: &UnitriGroup, v: &VergeData) -> Result<UpsilonReport> {
    let f = g.field();
    let a = ScaledIdempotent::unscaled(v.to_matrix());
    let sides = side_sets(v.main());
    let mut rep = UpsilonReport::default();
    let hats: Vec<RootPos> = sides.lhat.difference(&sides.l).to_vec();
    for &pos in &hats {
        let target = perp(pos, v.main())?;
        let sigma = upsilon_sigma(f, v, pos)?;
        for alpha in f.elements() {
            rep.root_checks += 1;
            let lhs = g.act_left_root(&a, pos, alpha);
            let rhs = g.act_right_root(&a, target, f.mul(alpha, sigma));
            if lhs != rhs {
                rep.failures.push(format!("{pos} with α = {alpha}: {lhs:?} vs {rhs:?}"));
            }
        }
    }
    for pos in sides.lo.iter().chain(v.main().iter()) {
        for alpha in f.elements() {
            rep.root_checks += 1;
            let lhs = g.act_left_root(&a, pos, alpha);
            let rhs = g.act_right_elem(&a, &upsilon_root(g, v, &sides, pos, alpha)?)?;
            if lhs != rhs {
                rep.failures.push(format!("{pos} with α = {alpha}: {lhs:?} vs {rhs:?}"));
            }
        }
    }
    if !is_hook_disconnected(v.main()) {
        return Ok(rep);
    }
    let lhat: Vec<RootPos> = sides.lhat.to_vec();
    for &x in &hats {
        for &y in &lhat {
            if x == y {
                continue;
            }
            for alpha in f.nonzero_elements() {
                for beta in f.nonzero_elements() {
                    rep.commutator_checks += 1;
                    let (gx, gy) = (g.root_element(x, alpha), g.root_element(y, beta));
                    let comm = g.commutator(&gx, &gy);
                    let lhs = g.act_left_elem(&comm, &a)?;
                    let ux = upsilon_root(g, v, &sides, x, alpha)?;
                    let uy = upsilon_root(g, v, &sides, y, beta)?;
                    let via_images = g.act_right_elem(&a, &g.commutator(&ux, &uy))?;
                    let via_factors = g.act_right_elem(&a, &upsilon(g, v, &sides, &comm)?)?;
                    if lhs != via_images || lhs != via_factors {
                        rep.failures.push(format!("[x_{x}({alpha}), x_{y}({beta})] evaluated on [A] differs"));
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// A linear character of a pattern group `U_J`, `u ↦ θ(Σ β_{ab} u_{ab})`, with `β`
/// supported off `D(J)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearCharSpec {
    pub domain: PatternSet,
    pub beta: Vec<(RootPos, FieldElement)>,
}

impl LinearCharSpec {
    /// Exponent of `ζ_p` in `λ(u)`.
    pub fn exponent(&self, f: &FieldSpec, u: &GroupElement) -> u32 {
        let s = self.beta.iter().fold(FieldElement::ZERO, |acc, &(p, b)| f.add(acc, f.mul(b, u.get(p))));
        f.theta_exponent(s)
    }
}

/// The monomial sources `(U_{R̂}, λ)` of the minimal constituents of a disconnected verge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SourceReport {
    pub rhat: PatternSet,
    /// `log_q [U : U_{R̂}]`.
    pub index_exponent: usize,
    /// Positions of `R̂` where `λ` is free.
    pub free: Vec<RootPos>,
    pub sources: Vec<LinearCharSpec>,
}

pub fn monomial_sources(f: &FieldSpec, v: &VergeData, cap: usize) -> Result<SourceReport> {
    let p = v.main();
    let shape = analyze_shape(p)?;
    if !shape.disconnected {
        return Err(Error::HookConnected);
    }
    let sides = side_sets(p);
    let rhat = sides.rhat;
    if !rhat.is_closed() {
        return Err(violation("R̂ is not closed"));
    }
    let derived = rhat.derived();
    if !derived.intersection(p.as_set()).is_empty() {
        return Err(violation("a main condition lies in D(R̂)"));
    }
    let index_exponent = crate::roots::triangle_len(p.n()) - rhat.len();
    if index_exponent != shape.a - shape.b {
        return Err(violation(format!("[U : U_R̂] = q^{index_exponent}, expected q^{}", shape.a - shape.b)));
    }
    let free: Vec<RootPos> = rhat.difference(&sides.r).difference(&derived).to_vec();
    if free.len() != shape.c {
        return Err(violation(format!("{} free positions for λ but c = {}", free.len(), shape.c)));
    }
    let q = f.q() as u128;
    let count = q.checked_pow(free.len() as u32).filter(|&x| x <= cap as u128).ok_or(Error::MemoryBudgetExceeded { cap })?;
    let mut sources = Vec::with_capacity(count as usize);
    for mut idx in 0..count {
        let mut beta: Vec<(RootPos, FieldElement)> = v.values().to_vec();
        for &x in &free {
            beta.push((x, FieldElement((idx % q) as u16)));
            idx /= q;
        }
        beta.sort_by_key(|&(x, _)| x);
        sources.push(LinearCharSpec { domain: rhat, beta });
    }
    Ok(SourceReport { rhat, index_exponent, free, sources })
}

/// `λ` restricted to `U_R` is the stabilizer character: `[A]u = λ(u)[A]` for `u ∈ U_R`.
pub fn source_restricts_to_theta(g: &UnitriGroup, v: &VergeData, src: &LinearCharSpec, samples: &[GroupElement]) -> Result<bool> {
    let a = ScaledIdempotent::unscaled(v.to_matrix());
    let r = side_sets(v.main()).r;
    for u in samples {
        if !u.support().iter().all(|&p| r.contains(p)) {
            continue;
        }
        let img = g.act_right_elem(&a, u)?;
        if img.matrix != a.matrix || img.exponent != src.exponent(g.field(), u) {
            return Ok(false);
        }
    }
    Ok(true)
}
