//! Runs every verification criterion and prints one line per criterion.

use remezkit_cli::verify::{run, ALL, DEFAULT_SEED};

#[test]
fn acceptance_criteria() {
    let outcomes = run(&ALL, DEFAULT_SEED);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
