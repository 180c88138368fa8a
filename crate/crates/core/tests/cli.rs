use std::path::Path;
use std::process::{Command, Output};

fn localhom(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_localhom")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const FIG_SCALES: [&str; 8] = ["--scale1", "0.018", "--scale2", "0.06", "--ball-R", "0.175", "--ball-r", "0.116"];

fn generate_chord(dir: &Path) {
    let o = localhom(
        dir,
        &[
            "generate",
            "--shape",
            "circle-chord",
            "--eps",
            "0.018",
            "--n",
            "1500",
            "--noise",
            "0.009",
            "--seed",
            "7",
            "-o",
            "s.csv",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(dir.join("s.json").exists());
}

#[test]
fn generate_rejects_too_few_points() {
    let dir = tempfile::tempdir().unwrap();
    let o = localhom(dir.path(), &["generate", "--shape", "circle", "--eps", "0.05", "--n", "10", "-o", "s.csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("achieved"), "{}", stderr(&o));
    let o = localhom(
        dir.path(),
        &["generate", "--shape", "circle", "--eps", "0.05", "--n", "150", "--noise", "0", "-o", "c.csv"],
    );
    assert!(o.status.success());
}

#[test]
fn infer_is_byte_identical_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    generate_chord(dir.path());
    let mut outputs = Vec::new();
    for (threads, out) in [("1", "a.json"), ("1", "b.json"), ("3", "c.json")] {
        let mut args =
            vec!["--threads", threads, "infer", "--sample", "s.csv", "--field", "2", "--maxdim", "1", "-o", out];
        args.extend(FIG_SCALES);
        let o = localhom(dir.path(), &args);
        assert!(o.status.success(), "{}", stderr(&o));
        outputs.push(std::fs::read(dir.path().join(out)).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
    let text = String::from_utf8(outputs.remove(0)).unwrap();
    assert!(text.contains("\"scale1\": 1.7999999999999999e-2"));
}

#[test]
fn classify_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    generate_chord(dir.path());
    let mut args = vec!["classify", "--sample", "s.csv", "-o", "r.json"];
    args.extend(FIG_SCALES);
    let o = localhom(dir.path(), &args);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("overall accuracy"));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(report["points"].as_array().unwrap().len(), 1500);
    assert_eq!(report["accuracy"]["by_w0"].as_array().unwrap().len(), 11);

    for (out, extra) in [("all.svg", None), ("ok.svg", Some("--only-correct"))] {
        let mut args = vec!["plot", "--report", "r.json", "-o", out];
        args.extend(extra);
        assert!(localhom(dir.path(), &args).status.success());
    }
    let all = std::fs::read_to_string(dir.path().join("all.svg")).unwrap();
    let ok = std::fs::read_to_string(dir.path().join("ok.svg")).unwrap();
    let red = |s: &str| s.matches(r##"fill="#d62728""##).count();
    assert!(red(&all) > red(&ok));
    assert!(all.contains(r#"class="legend""#) && all.contains("<polyline"));
}

#[test]
fn infer_with_selected_scales() {
    let dir = tempfile::tempdir().unwrap();
    let o = localhom(dir.path(), &["generate", "--shape", "circle", "--eps", "0.05", "--n", "150", "-o", "c.csv"]);
    assert!(o.status.success());
    let o = localhom(
        dir.path(),
        &[
            "classify", "--sample", "c.csv", "--select", "manifold", "--nu", "1.0", "--c", "sqrt2", "--t", "0", "-o",
            "r.json",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("overall accuracy 1.0000"), "{}", stderr(&o));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let mut args = vec!["infer", "--sample", "missing.csv", "--eps", "0.1"];
    args.extend(FIG_SCALES);
    assert_eq!(localhom(p, &args).status.code(), Some(2));
    let o = localhom(p, &["scales", "--select", "manifold", "--eps", "0.2", "--nu", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = localhom(p, &["scales", "--select", "strong", "--eps", "0.01", "--rbar", "0.001", "--rbar-outer", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(localhom(p, &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn scales_reports_warnings_for_manual_values() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = vec!["scales", "--eps", "0.018", "--t", "1"];
    args.extend(FIG_SCALES);
    let o = localhom(dir.path(), &args);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["regime"], "manual");
    assert_eq!(v["warnings"].as_array().unwrap().len(), 3);
}

#[test]
fn check_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let o = localhom(dir.path(), &["check", "--random", "200", "--max-pts", "10", "--seed", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "200/200 direct==coned");
    let o = localhom(dir.path(), &["check", "--fixtures"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("5/5 fixtures"));
    let o = localhom(dir.path(), &["check", "--random", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0/0 direct==coned");
}

#[test]
fn scan_and_group() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let o = localhom(
        p,
        &[
            "scan",
            "--shape",
            "circle-chord",
            "--center",
            "1,0",
            "--alpha",
            "0.08",
            "--eps",
            "0.02",
            "--grid",
            "0.02,1.2,30",
            "--dense-n",
            "400",
            "-o",
            "scan.csv",
            "--svg",
            "scan.svg",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let summary: serde_json::Value = serde_json::from_slice(&std::fs::read(p.join("scan.json")).unwrap()).unwrap();
    assert_eq!(summary["properties"]["violations"].as_array().unwrap().len(), 0);
    assert_eq!(summary["target_ranks"], serde_json::json!([0, 2]));
    assert!(std::fs::read_to_string(p.join("scan.csv")).unwrap().starts_with("R,r,member\n"));

    let o = localhom(p, &["generate", "--shape", "circle", "--eps", "0.05", "--n", "150", "-o", "c.csv"]);
    assert!(o.status.success());
    let o = localhom(p, &["group", "--sample", "c.csv", "--select", "manifold", "--nu", "1", "-o", "g.json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let g: serde_json::Value = serde_json::from_slice(&std::fs::read(p.join("g.json")).unwrap()).unwrap();
    assert_eq!(g["groups"].as_array().unwrap().len(), 1);
    assert_eq!(g["heuristic"], true);
}
