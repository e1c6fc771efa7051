mod common;

#[test]
fn golden_corpus_matches() {
    let results = common::run_golden_corpus();
    assert!(results.len() >= 12);
    let failed: Vec<String> = results
        .into_iter()
        .filter_map(|(name, r)| r.err().map(|e| format!("{name}: {e}")))
        .collect();
    assert!(failed.is_empty(), "{}", failed.join("\n"));
}
