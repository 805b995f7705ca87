mod cli_roundtrip {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cli_roundtrip.rs"));
}

mod counting_polynomial {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/counting_polynomial.rs"));
}

mod field_arithmetic {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/field_arithmetic.rs"));
}

mod minimal_constituents {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/minimal_constituents.rs"));
}

mod monomial_action {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/monomial_action.rs"));
}

mod monomial_sources {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/monomial_sources.rs"));
}

mod oracle_ranks {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/oracle_ranks.rs"));
}

mod orbits_and_templates {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/orbits_and_templates.rs"));
}

mod pattern_groups {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/pattern_groups.rs"));
}

mod verify_suite {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verify_suite.rs"));
}

#[test]
fn cli_roundtrip_runs() {
    cli_roundtrip::run_example().expect("cli_roundtrip example should run");
}

#[test]
fn counting_polynomial_runs() {
    counting_polynomial::run_example().expect("counting_polynomial example should run");
}

#[test]
fn field_arithmetic_runs() {
    field_arithmetic::run_example().expect("field_arithmetic example should run");
}

#[test]
fn minimal_constituents_runs() {
    minimal_constituents::run_example().expect("minimal_constituents example should run");
}

#[test]
fn monomial_action_runs() {
    monomial_action::run_example().expect("monomial_action example should run");
}

#[test]
fn monomial_sources_runs() {
    monomial_sources::run_example().expect("monomial_sources example should run");
}

#[test]
fn oracle_ranks_runs() {
    oracle_ranks::run_example().expect("oracle_ranks example should run");
}

#[test]
fn orbits_and_templates_runs() {
    orbits_and_templates::run_example().expect("orbits_and_templates example should run");
}

#[test]
fn pattern_groups_runs() {
    pattern_groups::run_example().expect("pattern_groups example should run");
}

#[test]
fn verify_suite_runs() {
    verify_suite::run_example().expect("verify_suite example should run");
}
