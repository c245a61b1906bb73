use std::process::{Command, Output};

use schubert_core::criteria::Verdict;

fn schubert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schubert")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = schubert(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn check_b2_element() {
    let text = stdout(&["check", "--type", "B", "--rank", "2", "--word", "2,1,2", "--json"]);
    let v: Verdict = serde_json::from_str(&text).unwrap();
    assert_eq!(v.element, "2,1,2");
    assert_eq!(v.type_label, "B2");
    assert!(!v.smooth);
    assert!(v.rationally_smooth);
    assert!(v.methods_agreed);
    let w = v.witness.clone().expect("singular elements carry a witness");
    assert_eq!(w.criterion, "stellar-pattern");
    assert_eq!(w.delta_type, "B2");
    assert_eq!(w.flattened_word, vec![2, 1, 2]);
    // the witness survives a round trip through the schema
    let again: Verdict = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
}

#[test]
fn check_text_and_methods() {
    let text = stdout(&["check", "--type", "A3", "--word", "2,1,3,2"]);
    assert!(text.contains("smooth: false"));
    assert!(text.contains("witness: stellar-pattern A3"));
    for m in ["pattern", "embedded", "classical", "kumar", "poincare"] {
        let text = stdout(&["check", "--type", "A", "--rank", "3", "--word", "1,2,1", "--method", m]);
        assert!(text.contains("smooth: true"), "{m}: {text}");
        assert!(text.contains("methods agreed: true"));
    }
}

#[test]
fn one_line_input_matches_word_input() {
    let by_perm = stdout(&["check", "--type", "B", "--rank", "3", "--perm", "-1,3,2", "--json"]);
    let v: Verdict = serde_json::from_str(&by_perm).unwrap();
    let by_word = stdout(&["check", "--type", "B", "--rank", "3", "--word", &v.element, "--json"]);
    assert_eq!(by_perm, by_word);
    let bad = schubert(&["check", "--type", "D", "--rank", "3", "--perm", "-1,2,3"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn d7_count() {
    assert_eq!(stdout(&["count", "--type", "D", "--rank", "7", "--predicate", "smooth", "--method", "classical"]).trim(), "9474");
}

#[test]
fn counts_by_predicate() {
    let count = |p: &str, m: &str| stdout(&["count", "--type", "B", "--rank", "3", "--predicate", p, "--method", m]);
    for m in ["pattern", "embedded", "classical", "kumar"] {
        assert_eq!(count("singular", m).trim(), "20", "{m}");
    }
    assert_eq!(count("rationally-singular", "poincare").trim(), "14");
    assert_eq!(count("fully-commutative", "pattern").trim(), "24");
    let a3 = stdout(&["count", "--type", "A3", "--predicate", "abelian"]);
    assert_eq!(a3.trim(), "14");
}

#[test]
fn crossval_f4() {
    assert_eq!(stdout(&["crossval", "--type", "F", "--rank", "4"]).trim(), "1152 elements, all methods agree");
}

#[test]
fn output_does_not_depend_on_threads() {
    for args in [
        &["crossval", "--type", "C4", "--json"][..],
        &["count", "--type", "B4", "--predicate", "singular"],
        &["count", "--type", "D6", "--predicate", "smooth", "--method", "classical"],
        &["subsystems", "--type", "F4", "--stellar"],
    ] {
        let one = stdout(&[args, &["--threads", "1"]].concat());
        let four = stdout(&[args, &["--threads", "4"]].concat());
        assert_eq!(one, four, "{args:?}");
    }
}

#[test]
fn tables_reproduce_counts() {
    let text = stdout(&["tables"]);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).take(6).map(|l| l.split_whitespace().collect()).collect();
    let expected = [
        ["B2", "1", "0", "1", "0"],
        ["G2", "5", "0", "5", "0"],
        ["A3", "2", "2", "2", "2"],
        ["B3", "20", "14", "6", "14"],
        ["C3", "20", "14", "6", "14"],
        ["D4", "84", "84", "1", "1"],
    ];
    assert_eq!(rows, expected.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    assert!(text.contains("D4: s2s1s3s4s2"));
}

#[test]
fn poincare_factorization() {
    let text = stdout(&["poincare", "--type", "B3", "--word", "1,2,1,3,2,1,3,2,3", "--factor"]);
    assert!(text.contains("coefficients: 1,3,5,7,8,8,7,5,3,1"));
    assert!(text.contains("product matches: true"));
    let text = stdout(&["poincare", "--type", "A3", "--word", "2,1,3,2", "--factor"]);
    assert!(text.contains("palindromic: false"));
    assert!(text.contains("factorization: none"));
}

#[test]
fn exit_codes() {
    assert_eq!(schubert(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(schubert(&["check", "--type", "B", "--rank", "2"]).status.code(), Some(1));
    assert_eq!(schubert(&["check", "--type", "Q", "--rank", "2", "--word", "1"]).status.code(), Some(1));
    assert_eq!(schubert(&["check", "--type", "B2", "--word", "1,3"]).status.code(), Some(1));
    let capped = schubert(&["check", "--type", "E8", "--word", "1,2", "--method", "kumar"]);
    assert_eq!(capped.status.code(), Some(2));
    let capped = schubert(&["count", "--type", "B5", "--cap", "1000"]);
    assert_eq!(capped.status.code(), Some(2));
    assert_eq!(schubert(&["--help"]).status.code(), Some(0));
}

#[test]
fn large_types_use_patterns_without_the_group() {
    let text = stdout(&["check", "--type", "E8", "--word", "4,2,3,4,5,4", "--json"]);
    let v: Verdict = serde_json::from_str(&text).unwrap();
    assert_eq!(v.type_label, "E8");
    assert!(v.methods_agreed);
}

#[test]
fn cache_dir_reuses_bruhat_order() {
    let dir = std::env::temp_dir().join(format!("schubert-cache-{}", std::process::id()));
    let args = ["crossval", "--type", "B3", "--cache-dir", dir.to_str().unwrap()];
    let first = stdout(&args);
    assert!(std::fs::read_dir(&dir).unwrap().count() == 1);
    let second = stdout(&args);
    assert_eq!(first, second);
    std::fs::remove_dir_all(&dir).unwrap();
}
