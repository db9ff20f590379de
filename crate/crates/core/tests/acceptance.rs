//! End-to-end acceptance run: every criterion of the regression suite at
//! seed 7, one PASS/FAIL line each, plus determinism and the negative control.

use hyperlines::catalog::EXAMPLE41;
use hyperlines::suite::{format_table, mutate_coefficient, run_suite, SuiteConfig, CRITERIA};

#[test]
fn acceptance_criteria() {
    let report = run_suite(&SuiteConfig::new(7));
    print!("{}", format_table(&report));
    assert_eq!(report.criteria.len(), CRITERIA.len());
    let failed: Vec<String> = report
        .criteria
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}. {} ({:?}) {:?}", c.index, c.name, c.error, c.measured))
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:#?}");
}

#[test]
fn cheap_criteria_are_byte_identical_across_runs() {
    let mut cfg = SuiteConfig::new(7);
    for filter in ["1", "2", "8"] {
        cfg.filter = Some(filter.into());
        let a = serde_json::to_string(&run_suite(&cfg)).unwrap();
        let b = serde_json::to_string(&run_suite(&cfg)).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn mutated_fixture_fails_the_fan_criterion() {
    let mut cfg = SuiteConfig::new(7);
    cfg.filter = Some("1".into());
    cfg.example41 = mutate_coefficient(EXAMPLE41).unwrap();
    assert_ne!(cfg.example41, EXAMPLE41);
    let report = run_suite(&cfg);
    print!("{}", format_table(&report));
    assert!(!report.passed);
    assert_eq!(report.first_failure.as_deref(), Some("1. example41 fan structure"));
}

#[test]
fn default_seed_cheap_criteria_pass() {
    let mut cfg = SuiteConfig::new(0);
    for filter in ["1", "2", "8"] {
        cfg.filter = Some(filter.into());
        let report = run_suite(&cfg);
        print!("{}", format_table(&report));
        assert!(report.passed, "{:?}", report.first_failure);
    }
}
