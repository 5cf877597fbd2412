use gentime::cli::oracle_compare;

#[test]
fn hirzebruch_surfaces_exhaustive() {
    for m in 0..=6 {
        let s = oracle_compare(&format!("f{m}"), 8).unwrap();
        assert_eq!(s.classes, 17 * 17);
        assert_eq!(s.discrepancies, 0, "{:?}", s.first_discrepancy);
    }
}

#[test]
fn rank7_unit_box() {
    let s = oracle_compare("rank7", 1).unwrap();
    assert_eq!(s.classes, 3u64.pow(7));
    assert_eq!(s.discrepancies, 0, "{:?}", s.first_discrepancy);
}

/// All 11^7 classes; about an hour in release mode on one core.
#[test]
#[ignore]
fn rank7_full_box() {
    let s = oracle_compare("rank7", 5).unwrap();
    assert_eq!(s.classes, 11u64.pow(7));
    assert_eq!(s.discrepancies, 0, "{:?}", s.first_discrepancy);
}
