use std::fs;
use std::path::PathBuf;

use hompoincare::golden::{default_corpus_dir, golden_verify, golden_verify_embedded, verify_file, GoldenStatus};
use hompoincare::weyl::HistogramOptions;

fn scratch(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("hompoincare-{tag}-{}", std::process::id()));
    fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn embedded_corpus_matches() {
    let opts = HistogramOptions::default().with_env();
    let outcomes = golden_verify_embedded(false, &opts).unwrap();
    assert_eq!(outcomes.len(), 14);
    for o in &outcomes {
        assert!(o.passed(), "{o}");
    }
    let skipped: Vec<_> = outcomes.iter().filter(|o| o.status == GoldenStatus::Skipped).collect();
    assert_eq!(skipped.len(), 1);
}

#[test]
fn f4_and_e7_files_match() {
    let opts = HistogramOptions::default();
    for name in ["hom_f4_m3.txt", "hom_e7_m3.txt"] {
        let o = verify_file(&default_corpus_dir().join(name), false, &opts).unwrap();
        assert_eq!(o.status, GoldenStatus::Match, "{o}");
    }
}

#[test]
fn corrupted_term_is_reported() {
    let dir = scratch("corrupt");
    let text = fs::read_to_string(default_corpus_dir().join("hom_f4_m3.txt")).unwrap();
    assert!(text.contains("\n20*s^18*t^3\n"));
    fs::write(dir.join("hom_f4_m3.txt"), text.replace("\n20*s^18*t^3\n", "\n19*s^18*t^3\n")).unwrap();
    let out = golden_verify(&dir, false, &HistogramOptions::default()).unwrap();
    fs::remove_dir_all(&dir).unwrap();
    assert_eq!(out.len(), 1);
    match &out[0].status {
        GoldenStatus::Mismatch(v) => {
            assert_eq!(v.len(), 1);
            assert_eq!((v[0].i, v[0].j), (18, 3));
            assert_eq!((v[0].expected.to_string(), v[0].got.to_string()), ("19".to_string(), "20".to_string()));
        }
        other => panic!("expected a mismatch, got {other:?}"),
    }
}

#[test]
fn missing_term_is_reported() {
    let dir = scratch("missing");
    let text = fs::read_to_string(default_corpus_dir().join("g2_quotient_m3.txt")).unwrap();
    let dropped: String = text.lines().filter(|l| *l != "3*s^10*t^5").map(|l| format!("{l}\n")).collect();
    assert_ne!(dropped, text);
    fs::write(dir.join("g2_quotient_m3.txt"), dropped).unwrap();
    let out = golden_verify(&dir, false, &HistogramOptions::default()).unwrap();
    fs::remove_dir_all(&dir).unwrap();
    assert!(matches!(&out[0].status, GoldenStatus::Mismatch(v) if v.len() == 1 && (v[0].i, v[0].j) == (10, 5)));
}
