use std::collections::BTreeMap;

use filtrum::suite::{run_corpus, LawSet};
use filtrum::Limits;

#[test]
fn every_law_holds_on_the_corpus() {
    let report = run_corpus(LawSet::All, &Limits::default()).unwrap();
    let failures: Vec<_> = report.failures().collect();
    assert!(failures.is_empty(), "{failures:#?}");
    let mut per_law: BTreeMap<&str, usize> = BTreeMap::new();
    for r in &report.records {
        *per_law.entry(r.law.as_str()).or_default() += 1;
    }
    // Every law has at least one applicable instance.
    assert!(per_law.len() >= 70, "{per_law:?}");
}
