//! One line per acceptance criterion; exits non-zero if any fails.

use chronoplan::suite::{run_suite, SuiteConfig};

fn main() {
    let reports = run_suite(&SuiteConfig::default());
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        reports.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
