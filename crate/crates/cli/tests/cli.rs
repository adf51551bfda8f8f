use std::path::PathBuf;
use std::process::{Command, Output};

fn languages() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../languages")
}

fn unifac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unifac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn spec(name: &str) -> String {
    languages().join(name).to_string_lossy().into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn strings(v: &serde_json::Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn su_slice_of_a_ab_aab() {
    let out = unifac(&["--json", "analyze", &spec("su_example.json"), "su", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    // (ab)^i a^j with 1 ≤ i + j, length ≤ 8
    let mut expected = Vec::new();
    for len in 1..=8usize {
        for i in (0..=len / 2).rev() {
            expected.push(format!("{}{}", "ab".repeat(i), "a".repeat(len - 2 * i)));
        }
    }
    expected.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    assert_eq!(strings(&report["members"]), expected);
    assert_eq!(report["su_gap_exists"], true);
    assert_eq!(report["witness"]["word"], "aab");
    assert_eq!(
        strings(&report["witness"]["factorizations"]),
        ["(a)(ab)", "(aab)"]
    );
}

#[test]
fn ufp_of_three_and_four() {
    let out = unifac(&["--json", "analyze", &spec("a3a4.json"), "ufp", "17"]);
    assert_eq!(out.status.code(), Some(0));
    let lengths: Vec<usize> = strings(&json(&out)["members"])
        .iter()
        .map(String::len)
        .collect();
    assert_eq!(lengths, [3, 4, 6, 7, 8, 9, 10, 11, 13, 14, 17]);
}

#[test]
fn prefix_code_is_a_code() {
    let out = unifac(&[
        "--json",
        "analyze",
        &spec("prefix_code.json"),
        "uf",
        "--max-len",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["is_code"], true);
    assert!(report["witness"].is_null());
    assert!(strings(&report["violations"]).is_empty());
}

#[test]
fn witnesses_are_shown_in_parenthesized_form() {
    let out = unifac(&["analyze", &spec("cycles.json"), "uf", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("shortest word outside uf(L): baaaaaab  length 8 (bound 72)"));
    assert!(text.contains("  (b)(aaaaaab)\n  (baaaaaa)(b)\n"));
}

#[test]
fn ufs_analysis_reports_bound() {
    let out = unifac(&["--json", "analyze", &spec("su_example.json"), "ufs", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let w = &json(&out)["witness"];
    assert_eq!(w["word"], "aab");
    assert_eq!(w["bound"], 2 * 9 * 9);
    assert_eq!(w["confirmed"], true);
}

#[test]
fn family_ranges() {
    let out = unifac(&["--json", "family", "cycles", "2..5"]);
    assert_eq!(out.status.code(), Some(0));
    let runs = json(&out);
    let lengths: Vec<u64> = runs
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            let claim = r["instance"]["claims"]
                .as_array()
                .unwrap()
                .iter()
                .find(|c| c["kind"] == "shortest_ambiguous")
                .unwrap();
            claim["length"].as_u64().unwrap()
        })
        .collect();
    assert_eq!(lengths, [8, 14, 22, 32]);

    let out = unifac(&["family", "staircase", "2..6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for n in [3, 6, 10, 15, 21] {
        assert!(text.contains(&format!("(length {n}), got")), "{n}");
    }
    assert!(!text.contains("FAIL"));
}

#[test]
fn fixed_families_run_once() {
    let out = unifac(&["--json", "family", "bell", "1..3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out).as_array().unwrap().len(), 1);
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("unifac-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let eps = dir.join("eps.json");
    std::fs::write(&eps, r#"{"alphabet":["a"],"kind":"regex","pattern":"a*"}"#).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"alphabet":["a"],"kind":"regex""#).unwrap();

    let out = unifac(&["analyze", eps.to_str().unwrap(), "uf"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("uf(L) = ∅"));
    assert_eq!(
        unifac(&["analyze", bad.to_str().unwrap(), "uf"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        unifac(&["analyze", &spec("cycles.json"), "ufp"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(unifac(&["family", "nope", "2"]).status.code(), Some(3));
    assert_eq!(unifac(&["family", "cycles", "5..2"]).status.code(), Some(3));
    let out = dir.join("missing").join("x.dot");
    let code = unifac(&[
        "export-dot",
        &spec("a3a4.json"),
        "ufs",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code.status.code(), Some(5));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn export_dot_writes_each_construction() {
    let dir = std::env::temp_dir().join(format!("unifac-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for c in ["dfa", "star", "double", "uf", "su", "ufp", "ufs"] {
        let path = dir.join(format!("{c}.dot"));
        let out = unifac(&[
            "export-dot",
            &spec("su_example.json"),
            c,
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{c}");
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("digraph"), "{c}");
        assert!(text.trim_end().ends_with('}'), "{c}");
    }
    let su = std::fs::read_to_string(dir.join("su.dot")).unwrap();
    assert!(su.contains("≠0, -1"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_are_deterministic() {
    let args = ["--json", "analyze", &spec("su_example.json"), "ufp", "7"];
    let (a, b) = (unifac(&args), unifac(&args));
    assert_eq!(a.stdout, b.stdout);
    let round: serde_json::Value = serde_json::from_str(&json(&a).to_string()).unwrap();
    assert_eq!(round, json(&a));
}
