use std::path::{Path, PathBuf};
use std::process::Command;

use lcpset_cli::analysis::analyze;
use lcpset_cli::cli::run;
use lcpset_cli::problem::load_problem;
use lcpset_cli::report::{CaseStatus, Num, RegionReport};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(format!("{name}.json")).display().to_string()
}

/// Runs the CLI in process, returning exit code, stdout and stderr.
fn lcpset(args: &[&str]) -> (u8, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("lcpset").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn parse_errors_exit_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\n  \"n\": 2,\n  \"M\": [[\"1\", \"0\"],\n");
    let (code, _, err) = lcpset(&["classify", &bad]);
    assert_eq!(code, 2);
    assert!(err.contains("bad.json:4:"), "{err}");

    let rational = write(
        dir.path(),
        "rational.json",
        "{\n  \"n\": 1,\n  \"M\": [[\"1\"]],\n  \"q\": [\"1/x\"]\n}",
    );
    let (code, _, err) = lcpset(&["classify", &rational]);
    assert_eq!(code, 2);
    assert!(err.contains("rational.json:4:9"), "{err}");

    let (code, _, _) = lcpset(&["classify", "/nonexistent/problem.json"]);
    assert_eq!(code, 2);
    let (code, _, _) = lcpset(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn dimension_above_four_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let row = "[\"1\", \"0\", \"0\", \"0\", \"0\"]";
    let text = format!(
        "{{\"n\": 5, \"M\": [{row}, {row}, {row}, {row}, {row}], \"q\": [\"1\", \"1\", \"1\", \"1\", \"1\"]}}"
    );
    let big = write(dir.path(), "big.json", &text);
    let (code, _, err) = lcpset(&["analyze", &big]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn bad_flags_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json").display().to_string();
    let svg = dir.path().join("r.svg").display().to_string();
    let m3 = fixture("m_matrix_3d");
    let (code, _, err) = lcpset(&["analyze", &m3, "--json", &json, "--svg", &svg]);
    assert_eq!(code, 2, "{err}");
    assert!(err.contains("two free coordinates"));
    let (code, _, _) = lcpset(&["analyze", &m3, "--json", &json, "--slice", "z7=0"]);
    assert_eq!(code, 2);
    let (code, _, _) = lcpset(&["analyze", &m3, "--json", &json, "--grid-step", "-1/2"]);
    assert_eq!(code, 2);
    let (code, _, _) = lcpset(&["check", &m3, "--point", "1,2"]);
    assert_eq!(code, 2);
    let (code, _, _) = lcpset(&["check", &m3, "--point", "1,-2,0"]);
    assert_eq!(code, 2);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_lcpset");
    let status = Command::new(bin).args(["classify", &fixture("hplus_2d")]).output().unwrap().status;
    assert_eq!(status.code(), Some(0));
    let status = Command::new(bin).args(["check", &fixture("hplus_2d"), "--point", "x"]).output().unwrap().status;
    assert_eq!(status.code(), Some(2));
}

#[test]
fn contradictory_data_gives_all_empty_cases() {
    let dir = tempfile::tempdir().unwrap();
    let problem = write(
        dir.path(),
        "empty.json",
        r#"{"n": 2, "M": [["-1", "0"], ["0", "-1"]], "q": [["-2", "-1"], ["-2", "-1"]]}"#,
    );
    let json = dir.path().join("empty-report.json");
    let (code, out, err) = lcpset(&["analyze", &problem, "--json", &json.display().to_string()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("inf none  sup none"), "{out}");
    let report: RegionReport = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report.cases.len(), 4);
    assert!(report.cases.iter().all(|c| c.status == CaseStatus::Empty && c.certificate.is_some()));
    assert_eq!(report.union.pieces, 0);
    assert!(std::fs::read_to_string(json.with_extension("svg")).unwrap().starts_with("<svg"));
}

#[test]
fn check_point_examples() {
    let (code, out, _) = lcpset(&["check", &fixture("hplus_3d"), "--point", "1/19,7/19,6/19"]);
    assert_eq!(code, 0);
    assert!(out.contains("solution set: yes\nsymmetric solution set: no"), "{out}");
    assert!(out.contains("m11 = 5, m12 = 2"), "{out}");
    assert!(out.contains("row 2 image [3/19, 48/19] excludes 0"), "{out}");

    let (_, out, _) = lcpset(&["check", &fixture("m_matrix_2d"), "--point", "100/3, 14/3"]);
    assert!(out.contains("solution set: yes\nsymmetric solution set: no"), "{out}");
    assert!(out.contains("forces m11 in [269/5000, 59/500], allowed [1/8, 1] (disjoint)"), "{out}");

    // the lower corner is symmetric here, so the supremum is a symmetric member
    for (name, sup) in [("m_matrix_2d", "44,10"), ("m_matrix_3d", "5712/607,3790/607,1730/607")] {
        let (_, out, _) = lcpset(&["check", &fixture(name), "--point", sup]);
        assert!(out.contains("solution set: yes\nsymmetric solution set: yes"), "{name}: {out}");
        assert!(out.contains("witness M"), "{out}");
    }
}

#[test]
fn classify_lists_certificates() {
    let (code, out, _) = lcpset(&["classify", &fixture("m_matrix_2d")]);
    assert_eq!(code, 0);
    assert!(out.contains("interval M-matrix      yes  M-matrix, witness u ="), "{out}");
    let (_, out, _) = lcpset(&["classify", &fixture("three_solutions")]);
    assert!(out.contains("interval P-matrix      no"), "{out}");
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut runs = Vec::new();
    for k in 0..2 {
        let json = dir.path().join(format!("run{k}.json"));
        let svg = dir.path().join(format!("run{k}.svg"));
        let (code, _, err) = lcpset(&[
            "analyze",
            &fixture("p_matrix_3d"),
            "--json",
            &json.display().to_string(),
            "--svg",
            &svg.display().to_string(),
        ]);
        assert_eq!(code, 0, "{err}");
        runs.push((std::fs::read(json).unwrap(), std::fs::read(svg).unwrap()));
    }
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn report_round_trips_exactly() {
    let problem = load_problem(Path::new(&fixture("hplus_3d"))).unwrap();
    let report = analyze(&problem).unwrap().report;
    let text = serde_json::to_string(&report).unwrap();
    let back: RegionReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
    let num = Num::new(&lcpset::rational::parse_rational("-1730/607").unwrap());
    let again: Num = serde_json::from_str(&serde_json::to_string(&num).unwrap()).unwrap();
    assert_eq!(again.value(), num.value());
}

/// Compares every fixture's report and figure with `fixtures/expected`.
/// `UPDATE_SNAPSHOTS=1` rewrites the snapshots instead.
#[test]
fn reports_match_snapshots() {
    let update = std::env::var_os("UPDATE_SNAPSHOTS").is_some();
    let expected = fixtures().join("expected");
    let dir = tempfile::tempdir().unwrap();
    let mut names: Vec<String> = std::fs::read_dir(fixtures())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "json").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    assert_eq!(names.len(), 6);
    for name in names {
        let json = dir.path().join(format!("{name}.json"));
        let (code, _, err) = lcpset(&["analyze", &fixture(&name), "--json", &json.display().to_string()]);
        assert_eq!(code, 0, "{name}: {err}");
        for ext in ["json", "svg"] {
            let produced = json.with_extension(ext);
            let snapshot = expected.join(format!("{name}.{ext}"));
            if !produced.exists() {
                assert!(!snapshot.exists(), "{name}: no {ext} produced");
                continue;
            }
            let got = std::fs::read_to_string(&produced).unwrap();
            if update {
                std::fs::write(&snapshot, &got).unwrap();
            } else {
                let want = std::fs::read_to_string(&snapshot)
                    .unwrap_or_else(|_| panic!("missing snapshot {}", snapshot.display()));
                assert!(got == want, "{name}.{ext} differs from its snapshot");
            }
        }
    }
}
