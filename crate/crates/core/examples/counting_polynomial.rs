// The polynomial d_n(t) counting minimal constituents of all supercharacters, with
// t = q - 1, split by degree and checked against a direct count.

use unitri::census::{count_direct, d_polynomial, strata, DEFAULT_CENSUS_CAP};
use unitri::Result;

pub fn run_example() -> Result<()> {
    for n in 1..=6 {
        let d = d_polynomial(n, DEFAULT_CENSUS_CAP)?;
        let at2 = d.eval(1).expect("small");
        let at3 = d.eval(2).expect("small");
        assert_eq!(at2 as u128, count_direct(n, 2, DEFAULT_CENSUS_CAP)?);
        assert_eq!(at3 as u128, count_direct(n, 3, DEFAULT_CENSUS_CAP)?);
        println!("d_{n}(t) = {d}    q=2: {at2}  q=3: {at3}");
    }
    for (delta, poly) in strata(5, DEFAULT_CENSUS_CAP)? {
        println!("  n = 5, degree q^{delta}: {poly}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
