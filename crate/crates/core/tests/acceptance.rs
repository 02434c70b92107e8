//! One PASS/FAIL line per acceptance criterion, each within its time budget.

use lagfrac_core::verify::{suites, SuiteReport};

#[test]
fn acceptance_criteria() {
    let reports: Vec<SuiteReport> = suites()
        .iter()
        .map(|s| {
            let r = s.run();
            println!("{r}");
            for c in r.checks.iter().filter(|c| !c.passed()) {
                println!("      {}: {:.3e} > {:.0e}", c.label, c.error, c.tolerance);
            }
            r
        })
        .collect();
    let failed: Vec<u32> = reports.iter().filter(|r| !r.passed()).map(|r| r.id).collect();
    println!("{} of {} criteria pass", reports.len() - failed.len(), reports.len());
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
