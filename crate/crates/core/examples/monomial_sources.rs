// Linear characters of U_{R-hat} that induce the minimal constituents, checked to occur
// once each in the orbit module.

use std::sync::Arc;

use unitri::minimal::monomial_sources;
use unitri::oracle::source_eigenspace_dim;
use unitri::orbit::DEFAULT_ORBIT_CAP;
use unitri::{FieldSpec, Result, UnitriGroup, VergeData};

pub fn run_example() -> Result<()> {
    let g = UnitriGroup::new(4, Arc::new(FieldSpec::parse("3", None)?))?;
    let v = VergeData::from_matrix(&g.matrix(&[(3, 1, 1), (4, 2, 2)])?)?;
    let report = monomial_sources(g.field(), &v, DEFAULT_ORBIT_CAP)?;
    println!("R-hat = {}, index q^{}", report.rhat, report.index_exponent);
    let free: Vec<String> = report.free.iter().map(|p| p.to_string()).collect();
    println!("free positions for the character: {}", free.join(", "));
    for src in &report.sources {
        let beta: Vec<String> = src.beta.iter().map(|(p, b)| format!("{p}:{b}")).collect();
        let dim = source_eigenspace_dim(&g, &v, src, DEFAULT_ORBIT_CAP)?;
        println!("  beta = {{{}}}  eigenspace dimension {dim}", beta.join(", "));
        assert_eq!(dim, 1);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
