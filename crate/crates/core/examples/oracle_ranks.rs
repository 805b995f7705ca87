// Exact linear algebra over Q(ζ_p): the rank of [A] f CU, the degree multiset of the
// quotient group H, and the commutator certificate for a connected verge.

use std::sync::Arc;

use unitri::oracle::{degree_multiset, idempotent_rank, no_linear_character_check, DEFAULT_GROUP_BUDGET};
use unitri::{FieldSpec, Result, RootPos, UnitriGroup, VergeData};

pub fn run_example() -> Result<()> {
    let g = UnitriGroup::new(4, Arc::new(FieldSpec::parse("3", None)?))?;
    let v = VergeData::from_matrix(&g.matrix(&[(3, 1, 2), (4, 2, 1)])?)?;
    for beta in g.field().elements() {
        let r = idempotent_rank(&g, &v, RootPos::new(4, 3), beta)?;
        println!("beta = {beta}: rank {} of {} vectors, expected {}", r.rank_span, g.order().unwrap(), r.expected);
        assert!(r.holds());
    }

    let g6 = UnitriGroup::new(6, Arc::new(FieldSpec::parse("2", None)?))?;
    let heis = VergeData::from_matrix(&g6.matrix(&[(4, 1, 1), (5, 2, 1), (6, 3, 1)])?)?;
    match degree_multiset(&g6, &heis, DEFAULT_GROUP_BUDGET) {
        Ok(m) => println!("H for {}: |H| = {}, degrees {:?}", heis.main(), m.h.order, m.multiplicities),
        Err(e) => println!("H for {}: {e}", heis.main()),
    }

    let g5 = UnitriGroup::new(5, Arc::new(FieldSpec::parse("2", None)?))?;
    let chain = VergeData::from_matrix(&g5.matrix(&[(3, 1, 1), (4, 2, 1), (5, 3, 1)])?)?;
    let cert = no_linear_character_check(&g5, &chain, DEFAULT_GROUP_BUDGET)?;
    println!("connected chain: certificate fired = {}, derived support {}", cert.fired, cert.derived_support);
    assert!(cert.fired);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
