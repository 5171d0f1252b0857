use std::path::PathBuf;

use gf2nbasis_core::tables::{
    diff_rows, enb_range, ext_range, gnb_range, read_csv, EnbRow, ExtRow, GnbRow,
};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../tables").join(name)
}

#[test]
fn golden_files_parse() {
    assert_eq!(read_csv::<GnbRow>(&golden("table1.csv")).unwrap().len(), 252);
    assert_eq!(read_csv::<EnbRow>(&golden("table2.csv")).unwrap().len(), 165);
    assert_eq!(read_csv::<ExtRow>(&golden("table3.csv")).unwrap().len(), 68);
}

#[test]
fn gnb_scan_shape() {
    let rows = gnb_range(250, 600, 10).unwrap();
    assert_eq!(rows.len(), 253);
    assert_eq!(rows.first(), Some(&GnbRow { n: 250, k: 9 }));
    assert_eq!(rows.last(), Some(&GnbRow { n: 599, k: 8 }));
    assert!(rows.windows(2).all(|w| w[0].n < w[1].n));
    assert!(rows.iter().all(|r| r.n % 8 != 0));
    // the two rows where the printed table and the scan disagree
    let report = diff_rows(&rows, &read_csv(&golden("table1.csv")).unwrap());
    assert_eq!(report.extra, vec!["309,2".to_string()]);
    assert_eq!(report.changed, vec![("506,1".to_string(), "506,5".to_string())]);
    assert!(report.missing.is_empty());
}

#[test]
fn enb_and_ext_scans_match_golden() {
    let enb = enb_range(500, 1000, 20).unwrap();
    assert!(diff_rows(&enb, &read_csv(&golden("table2.csv")).unwrap()).is_empty());
    let ext = ext_range(1000, 1200, 10, 20).unwrap();
    assert!(diff_rows(&ext, &read_csv(&golden("table3.csv")).unwrap()).is_empty());
}

#[test]
fn cross_table_consistency() {
    let gnb = gnb_range(250, 600, 10).unwrap();
    let ext = ext_range(1000, 1200, 10, 20).unwrap();
    for r in &ext {
        if let Some((d, k)) = r.witt4 {
            if (250..=600).contains(&d) {
                assert!(gnb.contains(&GnbRow { n: d, k }), "({d}, {k})");
            }
        }
    }
    for n in (1000..=1200).filter(|n| n % 8 == 0) {
        assert!(ext.iter().any(|r| r.n == n), "{n}");
    }
    let enb = enb_range(1000, 1200, 20).unwrap();
    for r in &ext {
        let expect = enb.iter().find(|e| e.n == r.n).map(|e| e.embed);
        assert_eq!(r.enb_embed, expect, "{}", r.n);
    }
    let admissible: Vec<u64> = ext
        .iter()
        .filter(|r| r.kummer_admissible == Some(true))
        .map(|r| r.kummer.unwrap().0)
        .collect();
    assert_eq!(admissible, vec![358, 364]);
}

#[test]
fn scans_are_deterministic() {
    let a = ext_range(1000, 1100, 10, 20).unwrap();
    let b = ext_range(1000, 1100, 10, 20).unwrap();
    assert_eq!(a, b);
}
