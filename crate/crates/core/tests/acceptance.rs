// One line per acceptance criterion, then a verdict. Runs without the test
// harness so the lines are always printed.

use psw::suite::{run_check, SuiteConfig, CHECK_COUNT};

fn main() {
    let cfg = SuiteConfig::default();
    let mut failed = Vec::new();
    for id in 1..=CHECK_COUNT {
        let r = run_check(id, &cfg);
        let mark = if r.passed { "PASS" } else { "FAIL" };
        println!("[{mark}] {:>2} {:<22} {:>6} cases {:>6} ms  {}", r.id, r.name, r.cases, r.millis, r.detail);
        if !r.passed {
            failed.push(r.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: {CHECK_COUNT}/{CHECK_COUNT} passed");
    } else {
        println!("acceptance: failed {failed:?}");
        std::process::exit(1);
    }
}
