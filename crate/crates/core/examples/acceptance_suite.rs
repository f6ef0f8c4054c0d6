// A few of the acceptance checks, run the same way the `suite` command
// runs them.

use std::error::Error;

use psw::suite::{run_suite, SuiteConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cfg = SuiteConfig { seed: 7, max_height: 14, jobs: 2 };
    let report = run_suite(&[1, 2, 3, 5], &cfg);
    for c in &report.checks {
        println!("{} {:<22} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    assert!(report.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
