//! Aggregated verification suites with one JSON record per check.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::action::{GroupElement, NilMatrix, ScaledIdempotent, Side, UnitriGroup};
use crate::census::{count_direct, d_polynomial, enumerate_main_sets, DEFAULT_CENSUS_CAP};
use crate::error::{violation, Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::minimal::{analyze_shape, is_hook_disconnected, monomial_sources, verify_upsilon};
use crate::oracle::{self, DEFAULT_GROUP_BUDGET};
use crate::orbit::{
    orbit_bfs, regular_checksum, template_of_orbit, verge_of, Orbit, VergeData, DEFAULT_ORBIT_CAP,
};
use crate::roots::positions;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Passed,
    Failed,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub n: usize,
    pub q: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Failed)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Failed).collect()
    }
}

/// Settings shared by the suites.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub orbit_cap: usize,
    pub group_budget: usize,
    pub seed: u64,
    /// Random triples for the action axiom when exhaustion is out of reach.
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { orbit_cap: DEFAULT_ORBIT_CAP, group_budget: DEFAULT_GROUP_BUDGET, seed: 0, samples: 10_000 }
    }
}

fn record(name: &str, r: Result<Value>) -> CheckResult {
    let (status, detail) = match r {
        Ok(v) => (CheckStatus::Passed, v),
        Err(e) if e.exit_code() == 2 => (CheckStatus::Skipped, json!({ "reason": e.to_string() })),
        Err(e) => (CheckStatus::Failed, json!({ "error": e.to_string() })),
    };
    CheckResult { name: name.to_string(), status, detail }
}

fn random_element(g: &UnitriGroup, rng: &mut ChaCha8Rng) -> GroupElement {
    let mut u = g.identity();
    for p in positions(g.n()) {
        u.set(p, FieldElement(rng.gen_range(0..g.q()) as u16));
    }
    u
}

fn random_matrix(g: &UnitriGroup, rng: &mut ChaCha8Rng) -> NilMatrix {
    let mut a = g.zero_matrix();
    for p in positions(g.n()) {
        a.set(p, FieldElement(rng.gen_range(0..g.q()) as u16));
    }
    a
}

/// `([A]u)v = [A](uv)`, exhaustively when `q^{3·n(n-1)/2}` is at most `2^20`, otherwise on
/// `samples` seeded random triples. Returns the number of triples checked.
pub fn action_axiom(g: &UnitriGroup, cfg: &SuiteConfig) -> Result<usize> {
    let check = |a: &NilMatrix, u: &GroupElement, v: &GroupElement| -> Result<()> {
        let s = ScaledIdempotent::unscaled(a.clone());
        let lhs = g.act_right_elem(&g.act_right_elem(&s, u)?, v)?;
        let rhs = g.act_right_elem(&s, &g.mul(u, v))?;
        if lhs != rhs {
            return Err(violation(format!("action axiom fails for {a:?}, {u:?}, {v:?}")));
        }
        Ok(())
    };
    let exhaustive = g.order().and_then(|o| o.checked_pow(3)).is_some_and(|t| t <= 1 << 20);
    if exhaustive {
        let els: Vec<GroupElement> = g.all_elements().collect();
        let mats: Vec<NilMatrix> = g.all_matrices().collect();
        mats.par_iter().try_for_each(|a| {
            for u in &els {
                for v in &els {
                    check(a, u, v)?;
                }
            }
            Ok::<(), Error>(())
        })?;
        Ok(mats.len() * els.len() * els.len())
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..cfg.samples {
            let (a, u, v) = (random_matrix(g, &mut rng), random_element(g, &mut rng), random_element(g, &mut rng));
            check(&a, &u, &v)?;
        }
        Ok(cfg.samples)
    }
}

/// Partition of all labels into right orbits: one template each, equal sizes per verge.
#[derive(Clone, Debug, Serialize)]
pub struct PartitionReport {
    pub labels: usize,
    pub orbits: usize,
    pub verges: usize,
}

pub fn orbit_partition(g: &UnitriGroup, cfg: &SuiteConfig) -> Result<PartitionReport> {
    let total = g.order().filter(|&o| o <= cfg.orbit_cap as u64).ok_or(Error::MemoryBudgetExceeded { cap: cfg.orbit_cap })?;
    let mut seen: HashMap<NilMatrix, usize> = HashMap::new();
    let mut orbits: Vec<Orbit> = Vec::new();
    for a in g.all_matrices() {
        if seen.contains_key(&a) {
            continue;
        }
        let o = orbit_bfs(g, &a, Side::Right, cfg.orbit_cap)?;
        for m in o.members() {
            if seen.insert(m.clone(), orbits.len()).is_some() {
                return Err(violation("right orbits overlap"));
            }
        }
        orbits.push(o);
    }
    if seen.len() as u64 != total {
        return Err(violation("right orbits do not cover V"));
    }
    let mut sizes: HashMap<VergeData, usize> = HashMap::new();
    for o in &orbits {
        let t = template_of_orbit(o)?;
        let v = verge_of(g, &t);
        if let Some(&s) = sizes.get(&v) {
            if s != o.len() {
                return Err(violation(format!("orbits with verge {v:?} have sizes {s} and {}", o.len())));
            }
        }
        sizes.insert(v, o.len());
    }
    Ok(PartitionReport { labels: total as usize, orbits: orbits.len(), verges: sizes.len() })
}

/// BFS orbit sizes against `q^a` for every verge shape (all values 1).
pub fn orbit_law(g: &UnitriGroup, cfg: &SuiteConfig) -> Result<usize> {
    let shapes = enumerate_main_sets(g.n(), DEFAULT_CENSUS_CAP)?;
    shapes.par_iter().try_for_each(|p| {
        let v = VergeData::ones(*p);
        let expect = (g.q() as u128).pow(v.a() as u32);
        for side in [Side::Right, Side::Left] {
            let got = orbit_bfs(g, &v.to_matrix(), side, cfg.orbit_cap)?.len() as u128;
            if got != expect {
                return Err(violation(format!("{side:?} orbit of {p:?} has {got} members, expected {expect}")));
            }
        }
        Ok(())
    })?;
    Ok(shapes.len())
}

fn verges(g: &UnitriGroup) -> Result<Vec<VergeData>> {
    oracle::all_verges(g, DEFAULT_CENSUS_CAP)
}

fn shapes_as_ones(n: usize) -> Result<Vec<VergeData>> {
    Ok(enumerate_main_sets(n, DEFAULT_CENSUS_CAP)?.into_iter().map(VergeData::ones).collect())
}

/// Υ identities on every verge with every value choice.
pub fn upsilon_suite(g: &UnitriGroup) -> Result<Value> {
    let vs = verges(g)?;
    let reports: Vec<_> = vs.par_iter().map(|v| verify_upsilon(g, v)).collect::<Result<_>>()?;
    let failures: Vec<&String> = reports.iter().flat_map(|r| r.failures.iter()).collect();
    if let Some(f) = failures.first() {
        return Err(violation(format!("{} Υ identity failures, first: {f}", failures.len())));
    }
    Ok(json!({
        "verges": vs.len(),
        "root_checks": reports.iter().map(|r| r.root_checks).sum::<usize>(),
        "commutator_checks": reports.iter().map(|r| r.commutator_checks).sum::<usize>(),
    }))
}

pub fn run_upsilon(n: usize, field: Arc<FieldSpec>) -> Result<SuiteReport> {
    let g = UnitriGroup::new(n, Arc::clone(&field))?;
    Ok(SuiteReport { n, q: field.name(), checks: vec![record("upsilon_identities", upsilon_suite(&g))] })
}

/// Every check the library knows, for one `(n, q)`.
pub fn run_suite(n: usize, field: Arc<FieldSpec>, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let g = UnitriGroup::new(n, Arc::clone(&field))?;
    let q = field.q();
    let cap = cfg.orbit_cap;
    let mut checks = Vec::new();

    checks.push(record("action_axiom", action_axiom(&g, cfg).map(|k| json!({ "triples": k }))));
    checks.push(record("orbit_partition", orbit_partition(&g, cfg).map(|r| json!(r))));
    checks.push(record("orbit_law", orbit_law(&g, cfg).map(|k| json!({ "shapes": k }))));
    checks.push(record(
        "regular_checksum",
        regular_checksum(n, q, DEFAULT_CENSUS_CAP).and_then(|r| {
            if r.holds() {
                Ok(json!(r))
            } else {
                Err(violation(format!("checksum {} != {}", r.total, r.expected)))
            }
        }),
    ));
    checks.push(record(
        "hom_dimensions",
        shapes_as_ones(n).and_then(|vs| {
            let dims: Vec<usize> = vs.par_iter().map(|v| oracle::hom_dimension(&g, v, cap)).collect::<Result<_>>()?;
            Ok(json!({ "verges": vs.len(), "total": dims.iter().sum::<usize>() }))
        }),
    ));
    checks.push(record(
        "distinct_verges_disjoint",
        verges(&g).and_then(|vs| {
            if vs.len() > 256 {
                return Err(Error::CapExceeded { n: vs.len(), cap: 256 });
            }
            if oracle::distinct_verges_disjoint(&g, &vs, cap)? {
                Ok(json!({ "verges": vs.len() }))
            } else {
                Err(violation("left and right orbits of distinct verges meet"))
            }
        }),
    ));
    checks.push(record("upsilon_identities", upsilon_suite(&g)));
    checks.push(record(
        "idempotent_identities",
        verges(&g).and_then(|vs| {
            let k: Vec<usize> = vs.par_iter().map(|v| oracle::idempotent_transfer_check(&g, v)).collect::<Result<_>>()?;
            Ok(json!({ "identities": k.iter().sum::<usize>() }))
        }),
    ));
    checks.push(record("idempotent_ranks", idempotent_ranks(&g)));
    checks.push(record(
        "minimality",
        enumerate_main_sets(n, DEFAULT_CENSUS_CAP).and_then(|ps| {
            let rs: Vec<_> = ps.par_iter().map(analyze_shape).collect::<Result<_>>()?;
            Ok(json!({
                "shapes": rs.len(),
                "disconnected": rs.iter().filter(|r| r.disconnected).count(),
            }))
        }),
    ));
    checks.push(record("degree_multisets", degree_multisets(&g, cfg)));
    checks.push(record("connected_certificates", connected_certificates(&g, cfg)));
    checks.push(record("monomial_sources", sources(&g, cfg)));
    checks.push(record(
        "pattern_normality",
        shapes_as_ones(n).and_then(|vs| {
            vs.par_iter().try_for_each(|v| oracle::normality_checks(&g, v))?;
            Ok(json!({ "verges": vs.len() }))
        }),
    ));
    checks.push(record("stabilizers", stabilizers(&g)));
    checks.push(record("class_count", class_count_check(&g, cfg)));

    Ok(SuiteReport { n, q: field.name(), checks })
}

fn idempotent_ranks(g: &UnitriGroup) -> Result<Value> {
    let order = g.order().unwrap_or(u64::MAX);
    if order > 4096 {
        return Err(Error::BudgetExceeded { order: order as u128, cap: 4096 });
    }
    let mut reports = Vec::new();
    for v in shapes_as_ones(g.n())? {
        let s = crate::minimal::side_sets(v.main());
        for hat in s.lhat.difference(&s.l).iter() {
            let mut split = 0;
            for beta in g.field().elements() {
                let r = oracle::idempotent_rank(g, &v, hat, beta)?;
                if !r.holds() {
                    return Err(violation(format!("rank data {r:?}")));
                }
                split += r.rank_span;
            }
            if split as u128 != (g.q() as u128).pow(v.a() as u32) {
                return Err(violation(format!("idempotent ranks sum to {split}, not q^a")));
            }
            reports.push(json!({ "verge": v, "hat": hat, "rank": (g.q() as u128).pow(v.a() as u32 - 1) }));
        }
    }
    Ok(json!({ "cases": reports }))
}

fn degree_multisets(g: &UnitriGroup, cfg: &SuiteConfig) -> Result<Value> {
    let q = g.q() as u128;
    let mut out = Vec::new();
    for v in shapes_as_ones(g.n())? {
        if !is_hook_disconnected(v.main()) || v.b() > 5 {
            continue;
        }
        let d = oracle::degree_multiset(g, &v, cfg.group_budget)?;
        let (a, b, c) = (v.a() as u32, v.b() as u32, d.c as u32);
        if d.weighted_sum(g.q()) != q.pow(b) || d.multiplicities.get(&0).copied() != Some(q.pow(c)) {
            return Err(violation(format!("degree data {:?} for {v:?}", d.multiplicities)));
        }
        let dims: u128 = d.multiplicities.iter().map(|(&m, &k)| k * q.pow(2 * (a - b + m as u32))).sum();
        if dims != q.pow(2 * a - b) {
            return Err(violation("constituent dimensions do not account for the orbit module"));
        }
        let hi = a - b.div_ceil(2);
        if d.multiplicities.keys().any(|&m| a - b + m as u32 > hi) {
            return Err(violation("a constituent exceeds the dimension bound"));
        }
        out.push(json!({ "verge": v, "degrees": d.multiplicities }));
    }
    Ok(json!({ "verges": out.len() }))
}

fn connected_certificates(g: &UnitriGroup, cfg: &SuiteConfig) -> Result<Value> {
    let mut fired = 0;
    for v in shapes_as_ones(g.n())? {
        if is_hook_disconnected(v.main()) {
            continue;
        }
        let c = oracle::no_linear_character_check(g, &v, cfg.group_budget)?;
        if !c.fired {
            return Err(violation(format!("no commutator certificate for connected {v:?}")));
        }
        fired += 1;
    }
    Ok(json!({ "connected": fired }))
}

fn sources(g: &UnitriGroup, cfg: &SuiteConfig) -> Result<Value> {
    let q = g.q() as u128;
    let mut total = 0usize;
    for v in shapes_as_ones(g.n())? {
        if !is_hook_disconnected(v.main()) {
            continue;
        }
        let r = monomial_sources(g.field(), &v, cfg.orbit_cap)?;
        let c = analyze_shape(v.main())?.c;
        if r.sources.len() as u128 != q.pow(c as u32) || !r.rhat.is_closed() || r.index_exponent != v.a() - v.b() {
            return Err(violation(format!("source data for {v:?}")));
        }
        total += r.sources.len();
    }
    Ok(json!({ "sources": total }))
}

fn stabilizers(g: &UnitriGroup) -> Result<Value> {
    let order = g.order().unwrap_or(u64::MAX);
    if order > 1 << 12 {
        return Err(Error::BudgetExceeded { order: order as u128, cap: 1 << 12 });
    }
    let vs = shapes_as_ones(g.n())?;
    vs.par_iter().try_for_each(|v| oracle::stabilizer_check(g, v))?;
    Ok(json!({ "verges": vs.len() }))
}

fn class_count_check(g: &UnitriGroup, cfg: &SuiteConfig) -> Result<Value> {
    if g.n() > 4 {
        return Err(Error::CapExceeded { n: g.n(), cap: 4 });
    }
    let k = oracle::class_count(g, cfg.group_budget)?;
    let d = d_polynomial(g.n(), DEFAULT_CENSUS_CAP)?;
    let at = d.eval(g.q() as i128 - 1).ok_or(Error::Overflow("d_n(q-1)"))?;
    let direct = count_direct(g.n(), g.q(), DEFAULT_CENSUS_CAP)?;
    if at != k as i128 || direct != k as u128 {
        return Err(violation(format!("d_n(q-1) = {at}, direct {direct}, classes {k}")));
    }
    Ok(json!({ "classes": k, "d_n": at }))
}

/// Summary line per check, for the text output format.
pub fn summary_lines(r: &SuiteReport) -> Vec<String> {
    r.checks
        .iter()
        .map(|c| {
            let tag = match c.status {
                CheckStatus::Passed => "PASS",
                CheckStatus::Failed => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            format!("{tag} {} {}", c.name, c.detail)
        })
        .collect()
}

/// Counts per status.
pub fn tally(r: &SuiteReport) -> BTreeMap<&'static str, usize> {
    let mut m = BTreeMap::new();
    for c in &r.checks {
        let k = match c.status {
            CheckStatus::Passed => "passed",
            CheckStatus::Failed => "failed",
            CheckStatus::Skipped => "skipped",
        };
        *m.entry(k).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_n4_q2_passes() {
        let f = Arc::new(FieldSpec::new(2, 1, None).unwrap());
        let r = run_suite(4, f, &SuiteConfig::default()).unwrap();
        assert!(r.all_passed(), "{:#?}", r.failures());
        assert!(r.checks.iter().all(|c| c.status == CheckStatus::Passed), "{:#?}", r.checks);
    }

    #[test]
    fn suite_n3_q3_passes() {
        let f = Arc::new(FieldSpec::new(3, 1, None).unwrap());
        let r = run_suite(3, f, &SuiteConfig::default()).unwrap();
        assert!(r.all_passed(), "{:#?}", r.failures());
    }

    #[test]
    fn upsilon_only() {
        let f = Arc::new(FieldSpec::new(2, 2, None).unwrap());
        assert!(run_upsilon(4, f).unwrap().all_passed());
    }
}
