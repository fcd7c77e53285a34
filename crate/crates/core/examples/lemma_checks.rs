//! Runs every self-check suite and prints one line per check.

use qcrd::checks::{run_suite, SUITES};

fn main() -> qcrd::Result<()> {
    for suite in SUITES {
        let report = run_suite(suite)?;
        for c in &report.checks {
            println!(
                "{:<8} {:<48} {}  measured {:.3e} (tol {:.1e})",
                suite,
                c.name,
                if c.passed { "ok  " } else { "FAIL" },
                c.measured,
                c.tolerance
            );
        }
    }
    Ok(())
}
