//! The twelve acceptance criteria at their default tolerances and budgets.
//! Prints one PASS/FAIL line per criterion.

use cxpt_cli::{run_criterion, summary_line, Config, CRITERIA};

#[test]
fn acceptance_criteria() {
    let cfg = Config::default();
    let mut failed = Vec::new();
    for c in CRITERIA.iter() {
        let r = run_criterion(c, &cfg);
        println!("{}", summary_line(&r));
        if !r.passed {
            failed.push(r.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
