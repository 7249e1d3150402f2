use fincosmos::corpus::Corpus;
use fincosmos::suite::{run_criterion, SuiteSettings, CRITERIA};

#[test]
fn acceptance() {
    let corpus = Corpus::standard();
    let settings = SuiteSettings::default();
    let mut failed = Vec::new();
    for id in 1..=CRITERIA.len() {
        let r = run_criterion(id, &corpus, &settings).expect("criterion exists");
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        println!("[{verdict}] {:>2} {:<22} {:>7} ms  {}", r.id, r.name, r.millis, r.detail);
        if !r.passed {
            failed.push(r.name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
