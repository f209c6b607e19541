//! The acceptance gate: runs the full battery and prints one pass/fail line
//! per check.

use kronspan::report::run_acceptance_suite;
use kronspan::Budget;

#[test]
fn acceptance() {
    let report = run_acceptance_suite(42, &Budget::default());
    print!("{}", report.to_text());
    let failures: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{} [{}]: expected {}, actual {}", c.name, c.inputs, c.expected, c.actual))
        .collect();
    assert!(
        failures.is_empty(),
        "{} of {} checks failed:\n{}",
        failures.len(),
        report.checks.len(),
        failures.join("\n")
    );
}
