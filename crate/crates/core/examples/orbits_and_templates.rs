// Right and left orbits of a verge, their templates, and the regular checksum of U_4(2).

use std::sync::Arc;

use unitri::orbit::{
    classify, orbit_bfs, orbit_intersection_size, regular_checksum, template_of_orbit, verge_of, DEFAULT_ORBIT_CAP,
};
use unitri::{FieldSpec, Result, Side, UnitriGroup, VergeData};

pub fn run_example() -> Result<()> {
    let g = UnitriGroup::new(4, Arc::new(FieldSpec::parse("2", None)?))?;
    let a = g.matrix(&[(3, 1, 1), (4, 2, 1)])?;
    let v = VergeData::from_matrix(&a)?;
    let c = classify(&a);
    println!("verge {a:?}: template={} main={}", c.is_template, c.main);
    println!("a = {} arm positions, b = {} hook meetings", v.a(), v.b());

    let right = orbit_bfs(&g, &a, Side::Right, DEFAULT_ORBIT_CAP)?;
    let left = orbit_bfs(&g, &a, Side::Left, DEFAULT_ORBIT_CAP)?;
    println!("|right orbit| = {}, |left orbit| = {}", right.len(), left.len());
    assert_eq!(right.len(), 1 << v.a());

    // any member reduces back to the same template and verge
    for b in right.sorted_members() {
        assert_eq!(verge_of(&g, &b), v);
    }
    println!("template of the right orbit: {:?}", template_of_orbit(&right)?);

    let meet = orbit_intersection_size(&g, &v, DEFAULT_ORBIT_CAP)?;
    println!("|right ∩ left| = {} (q^b = {})", meet.bfs, meet.formula);
    assert!(meet.holds());

    let sum = regular_checksum(4, 2, DEFAULT_ORBIT_CAP)?;
    println!("sum over verges of |O|^2 / q^b by |P|: {:?} = {}", sum.by_size, sum.total);
    assert!(sum.holds());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
