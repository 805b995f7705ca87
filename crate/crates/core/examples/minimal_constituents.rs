// Hook connectedness and the minimal-degree constituents of verge orbit modules.

use unitri::census::{enumerate_main_sets, DEFAULT_CENSUS_CAP};
use unitri::minimal::{analyze, side_sets};
use unitri::{FieldSpec, MainConditionSet, Result, RootPos, VergeData};

fn verge(n: usize, main: &[(usize, usize)]) -> Result<VergeData> {
    let p = MainConditionSet::new(n, main.iter().map(|&(i, j)| RootPos::new(i, j)))?;
    Ok(VergeData::ones(p))
}

pub fn run_example() -> Result<()> {
    let f = FieldSpec::parse("3", None)?;

    let v = verge(4, &[(3, 1), (4, 2)])?;
    let r = analyze(&f, &v)?;
    let s = side_sets(v.main());
    println!("{}: disconnected={} a={} b={} c={}", v.main(), r.disconnected, r.a, r.b, r.c);
    println!("  L-hat = {}, R-hat = {}", s.lhat, s.rhat);
    println!("  {} minimal constituents of degree q^{}", r.count_minimal, r.minimal_dim_exponent);

    let chain = verge(5, &[(3, 1), (4, 2), (5, 3)])?;
    let r = analyze(&f, &chain)?;
    println!("{}: disconnected={} so {} minimal constituents", chain.main(), r.disconnected, r.count_minimal);
    assert!(!r.disconnected && r.count_minimal == 0);

    // how many shapes at n = 6 are connected
    let shapes = enumerate_main_sets(6, DEFAULT_CENSUS_CAP)?;
    let mut connected = 0;
    for p in &shapes {
        if !analyze(&f, &VergeData::ones(*p))?.disconnected {
            connected += 1;
        }
    }
    println!("n = 6: {connected} of {} main-condition sets are hook connected", shapes.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
