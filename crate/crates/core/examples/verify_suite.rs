// Every built-in check for U_4(2), one line each.

use std::sync::Arc;

use unitri::verify::{run_suite, summary_lines, SuiteConfig};
use unitri::{FieldSpec, Result};

pub fn run_example() -> Result<()> {
    let report = run_suite(4, Arc::new(FieldSpec::parse("2", None)?), &SuiteConfig::default())?;
    for line in summary_lines(&report) {
        println!("{}", line.chars().take(100).collect::<String>());
    }
    assert!(report.all_passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
