// Builds a suite configuration from text, runs it and prints the report.

use quatreg::suite::{run_suite, SuiteConfig};
use quatreg::Result;

const CONFIG: &str = "
# two regular functions and one control through three suites
functions = power:2 arctan_ex:1 conj
suites = theorem1 lemma1 hyperholomorphy
samples = 50
seed = 5
backend = both
";

pub fn run_example() -> Result<()> {
    let cfg = SuiteConfig::parse(CONFIG)?;
    let report = run_suite(&cfg)?;
    print!("{}", report.table());
    println!(
        "{} records, {} unexpected, exit code {}",
        report.records.len(),
        report.unexpected(),
        report.exit_code()
    );
    assert!(report.expectations_met());
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
