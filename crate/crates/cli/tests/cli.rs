use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn dwshell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dwshell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_out(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_matrix(dir: &Path, name: &str, m: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, m.to_string()).unwrap();
    p
}

fn real_diag(values: &[f64]) -> Value {
    let n = values.len();
    let entries: Vec<Vec<[f64; 2]>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| [if i == j { values[i] } else { 0.0 }, 0.0])
                .collect()
        })
        .collect();
    serde_json::json!({ "n": n, "entries": entries })
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn repro_example_reports_both_norms() {
    let out = dwshell(&["repro-example"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("2.6918 / 2.7578, verdict NotRoberts"),
        "{text}"
    );

    let forced = dwshell(&["repro-example", "--force-shell", "--json"]);
    assert_eq!(forced.status.code(), Some(0));
    let doc = json_out(&forced);
    assert_eq!(doc["verdict"]["kind"], "NotRoberts");
    assert_eq!(doc["verdict"]["method"], "shell-sweep");
    assert!(doc["nr_symmetry_defect"].as_f64().unwrap() <= 1e-6);

    let fine = json_out(&dwshell(&["repro-example", "--nphi", "181", "--json"]));
    assert_eq!(fine["norm_plus"], doc["norm_plus"]);
    assert_eq!(fine["norm_minus"], doc["norm_minus"]);
}

#[test]
fn check_identity_exit_codes() {
    let out = dwshell(&["check", "identity", p(&fixture("example1.json"))]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_out(&out);
    assert_eq!(v["kind"], "NotRoberts");
    let w = &v["witness"];
    let gap = (w["norm_plus"].as_f64().unwrap() - w["norm_minus"].as_f64().unwrap()).abs();
    assert!(gap > 1e-6 * (1.0 + 2.3583));

    let out = dwshell(&["check", "identity", p(&fixture("jordan2.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_out(&out);
    assert_eq!(
        (v["kind"].as_str(), v["method"].as_str()),
        (Some("RobertsCertified"), Some("trace"))
    );

    let v = json_out(&dwshell(&[
        "check",
        "identity",
        p(&fixture("unitary4.json")),
    ]));
    assert_eq!(v["class"], "Unitary");
    assert_eq!(v["method"], "nr-symmetry");
}

#[test]
fn check_identity_inconclusive_band() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_matrix(dir.path(), "near.json", &real_diag(&[1.0, -1.0 + 1e-8]));
    let out = dwshell(&["check", "identity", p(&m)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_out(&out)["kind"], "Inconclusive");
}

#[test]
fn check_pair_and_bj() {
    let dir = tempfile::tempdir().unwrap();
    let gen = json_out(&dwshell(&[
        "gen",
        "orthogonal_pair",
        "--n",
        "4",
        "--k",
        "2",
        "--seed",
        "9",
    ]));
    let a = write_matrix(dir.path(), "a.json", &gen["a"]);
    let b = write_matrix(dir.path(), "b.json", &gen["b"]);
    let out = dwshell(&["check", "pair", p(&a), p(&b)]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(json_out(&out)["refuted"], false);
    assert_eq!(
        dwshell(&["check", "bj", p(&a), p(&b)]).status.code(),
        Some(0)
    );
    assert_eq!(
        dwshell(&["check", "bj", p(&b), p(&a)]).status.code(),
        Some(0)
    );

    let id = write_matrix(dir.path(), "id.json", &real_diag(&[1.0, 1.0]));
    let proj = write_matrix(dir.path(), "proj.json", &real_diag(&[1.0, 0.0]));
    let out = dwshell(&["check", "pair", p(&id), p(&proj)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json_out(&out)["witness"]["lambda"].is_array());

    let sym = write_matrix(dir.path(), "sym.json", &real_diag(&[1.0, -1.0]));
    assert_eq!(dwshell(&["check", "bj", p(&sym)]).status.code(), Some(0));
    assert_eq!(dwshell(&["check", "bj", p(&proj)]).status.code(), Some(1));
    assert_eq!(
        dwshell(&["check", "bj", p(&fixture("jordan2.json"))])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn export_nr_of_jordan_block_is_a_disk() {
    let out = dwshell(&["export", "nr", p(&fixture("jordan2.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,h,re,im"));
    let h: Vec<f64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(h.len(), 720);
    assert!(h.iter().all(|v| (v - 0.5).abs() <= 1e-9));
}

#[test]
fn export_shell_of_unitary_is_flat() {
    let out = dwshell(&[
        "export",
        "shell",
        p(&fixture("unitary4.json")),
        "--nphi",
        "31",
        "--shell-ntheta",
        "72",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("u1,u2,u3,h,mu_re,mu_im,r"));
    let r: Vec<f64> = lines
        .map(|l| l.split(',').nth(6).unwrap().parse().unwrap())
        .collect();
    assert_eq!(r.len(), 1 + 29 * 72); // equator excluded
    assert!(r.iter().all(|v| (v - 1.0).abs() <= 1e-9));
}

#[test]
fn export_shell_writes_report_for_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = dwshell(&[
        "export",
        "shell",
        p(&fixture("example1.json")),
        "--out",
        p(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("shell.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 1 + 89 * 360);
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("shell.json")).unwrap())
            .unwrap();
    assert!(report["defect"].as_f64().unwrap() >= 0.16);
    assert!(report["squared_gap_at_unit"].as_f64().unwrap() >= 0.35);
}

#[test]
fn outputs_are_byte_identical() {
    let ex = fixture("example1.json");
    let args = [
        "export",
        "shell",
        p(&ex),
        "--nphi",
        "21",
        "--shell-ntheta",
        "40",
    ];
    let first = dwshell(&args).stdout;
    assert_eq!(first, dwshell(&args).stdout);
    let single = Command::new(env!("CARGO_BIN_EXE_dwshell"))
        .args(args)
        .env("DWSHELL_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(first, single.stdout);
    let g = ["gen", "ginibre", "--n", "3", "--seed", "17", "--json"];
    assert_eq!(dwshell(&g).stdout, dwshell(&g).stdout);
    let doc = json_out(&dwshell(&g));
    assert_eq!(doc["spec"]["class"], "ginibre");
    assert_eq!(doc["spec"]["seed"], 17);
}

#[test]
fn gen_output_is_loadable() {
    let dir = tempfile::tempdir().unwrap();
    let out = dwshell(&[
        "gen",
        "symmetric_spectrum_normal",
        "--n",
        "4",
        "--spectrum",
        "1:1,0.5:0",
        "--out",
        p(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let file = dir.path().join("symmetric_spectrum_normal_n4_seed0.json");
    let out = dwshell(&["check", "identity", p(&file)]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn errors_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        "{\"n\": 2,\n \"entries\": [[[1, 0], [2, 0]],\n [[3, 0]]]}",
    )
    .unwrap();
    let out = dwshell(&["check", "identity", p(&bad)]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("row") && err.contains("column"), "{err}");

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"n\": 2,\n \"entries\": [[[1, 0], [2, 0]]").unwrap();
    let out = dwshell(&["check", "identity", p(&broken)]);
    assert_eq!(out.status.code(), Some(3));

    assert_eq!(
        dwshell(&["check", "identity", "/nonexistent.json"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(dwshell(&["proptest", "nosuch"]).status.code(), Some(3));
    assert_eq!(
        dwshell(&["repro-example", "--tol-pass", "1e-5", "--tol-fail", "1e-6"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        dwshell(&["repro-example", "--ntheta", "7"]).status.code(),
        Some(3)
    );
    assert_eq!(
        dwshell(&["gen", "nosuch", "--n", "2"]).status.code(),
        Some(3)
    );
    assert_eq!(dwshell(&["--version"]).status.code(), Some(0));
}

#[test]
fn proptest_suites_pass() {
    let out = dwshell(&["proptest", "chain", "--trials", "200"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("no_roberts_witness: 200/200"));

    let out = dwshell(&["proptest", "twobytwo", "--trials", "500"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("trace_matches_shell: 500/500"));

    let out = dwshell(&["proptest", "selfadjoint", "--trials", "200", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_out(&out);
    assert_eq!(doc["all_pass"], true);
    assert_eq!(doc["properties"][1]["passed"], 200);

    for suite in [
        "normal",
        "invariance",
        "ellipse",
        "axis",
        "oracle",
        "generators",
    ] {
        let out = dwshell(&[
            "proptest",
            suite,
            "--trials",
            "20",
            "--nphi",
            "31",
            "--shell-ntheta",
            "120",
        ]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", stdout(&out));
    }
}
