// Brute-force pattern groups: orders, derived subgroups and class numbers.

use std::sync::Arc;

use unitri::oracle::{PatternGroup, DEFAULT_GROUP_BUDGET};
use unitri::{FieldSpec, PatternSet, Result, RootPos, UnitriGroup};

pub fn run_example() -> Result<()> {
    for (n, q) in [(3, "2"), (3, "3"), (4, "2"), (3, "2^2")] {
        let g = UnitriGroup::new(n, Arc::new(FieldSpec::parse(q, None)?))?;
        let s = PatternGroup::new(&g, PatternSet::full(n), DEFAULT_GROUP_BUDGET)?.stats();
        println!("U_{n}({q}): order {}, |U'| = {}, {} classes", s.order, s.derived_order, s.class_count);
    }

    let g = UnitriGroup::new(4, Arc::new(FieldSpec::parse("3", None)?))?;
    let j = PatternSet::from_positions(4, [RootPos::new(2, 1), RootPos::new(3, 1), RootPos::new(3, 2), RootPos::new(4, 1)]);
    let n = PatternSet::from_positions(4, [RootPos::new(4, 1)]);
    let h = PatternGroup::quotient(&g, j, n, DEFAULT_GROUP_BUDGET)?.stats();
    println!("U_J / U_N with J = {j}, N = {n}: order {}, {} classes", h.order, h.class_count);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
