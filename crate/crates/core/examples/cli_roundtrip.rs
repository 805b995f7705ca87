// Driving the command-line runners in process and reading their JSON.

use unitri::cli::parse_args;
use unitri::Result;

pub fn run_example() -> Result<()> {
    for args in [
        vec!["unitri", "classify", "--n", "4", "--entries", "[[3,1,1],[4,2,1]]"],
        vec!["unitri", "count", "--n", "4", "--check-q", "2,3"],
        vec!["unitri", "orbit", "--n", "4", "--q", "3", "--entries", "[[4,1,1]]"],
    ] {
        let cli = parse_args(args.clone())?.expect("not a help request");
        let out = cli.run()?;
        println!("$ {}\n{}", args[1..].join(" "), serde_json::to_string(&out.value).expect("json"));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
