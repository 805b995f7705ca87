// Arithmetic in F_4 and F_9, and the trace character θ(x) = ζ_p^{Tr(x)}.

use std::sync::Arc;

use unitri::{FieldSpec, Result};

pub fn run_example() -> Result<()> {
    let f4 = Arc::new(FieldSpec::parse("2^2", None)?);
    println!("F_{} defined by {:?} (highest degree first)", f4.q(), f4.poly_high_first());
    for a in f4.elements() {
        let row: Vec<String> = f4.elements().map(|b| f4.mul(a, b).to_string()).collect();
        println!("  {a} * _ = [{}]   theta exponent {}", row.join(" "), f4.theta_exponent(a));
    }

    // a nonstandard polynomial for F_9: x^2 + 2x + 2
    let f9 = FieldSpec::parse("3^2", Some(&[1, 2, 2]))?;
    let kernel = f9.elements().filter(|&x| f9.theta_exponent(x) == 0).count();
    println!("F_9: trace kernel has {kernel} elements");
    assert_eq!(kernel, 3);

    let err = FieldSpec::parse("6", None).unwrap_err();
    println!("q = 6 is rejected: {err}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
