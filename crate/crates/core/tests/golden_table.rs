mod common;

#[test]
fn golden_rows_match_snapshot_and_tables() {
    let rows = common::golden_rows();
    if std::env::var_os("HYPEREXT_UPDATE_GOLDEN").is_some() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/classify.tsv");
        std::fs::write(path, rows.join("\n") + "\n").unwrap();
        return;
    }
    let golden: Vec<&str> = common::GOLDEN.lines().collect();
    assert_eq!(rows.len(), golden.len());
    for (row, want) in rows.iter().zip(&golden) {
        assert_eq!(row, want);
        let f: Vec<&str> = row.split('\t').collect();
        assert_eq!(common::expected(f[0], f[1]), (f[2], f[3]), "{}", row);
    }
}
