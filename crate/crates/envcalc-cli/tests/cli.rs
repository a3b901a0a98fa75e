use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use envcalc::io::Instance;
use envcalc::theoremlab::gallery_instances;
use tempfile::TempDir;

const ABS: &str = r#"{"kind":"pl-convex-1d","breakpoints":["0"],"values":["0"],"left_slope":"-1","right_slope":"1"}"#;
const OPEN_UNIT: &str = r#"{"kind":"pl-convex-1d","breakpoints":["0","1"],"values":["0","0"],"left_slope":"-inf","right_slope":"inf","endpoint_overrides":{"left":"inf","right":"inf"}}"#;
const RAISED: &str = r#"{"kind":"pl-convex-1d","breakpoints":["0","1"],"values":["0","0"],"left_slope":"-inf","right_slope":"inf","endpoint_overrides":{"left":"1"}}"#;
const THREE_POINTS: &str = r#"{"kind":"indicator","dim":1,"points":[[0],[1],[2]]}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn envcalc(args: &[&str]) -> Output {
    envcalc_with(args, None)
}

fn envcalc_with(args: &[&str], backend: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_envcalc"));
    cmd.args(args).env_remove("ENVCALC_BACKEND");
    if let Some(b) = backend {
        cmd.env("ENVCALC_BACKEND", b);
    }
    cmd.output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows of a CSV, split into cells.
fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn conjugate_of_abs_is_the_indicator_of_the_unit_interval() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "abs.json", ABS);
    let out = envcalc(&["conjugate", "--instance", path(&f), "--dual-grid", "-2:2:5"]);
    assert_eq!(code(&out), 0);
    let csv = stdout(&out);
    assert!(csv.starts_with("y,value,exact\n"));
    let values: Vec<String> = rows(&csv).into_iter().map(|r| r[1].clone()).collect();
    assert_eq!(values, ["inf", "0", "0", "0", "inf"]);
}

#[test]
fn forced_grid_backend_samples_exact_instances() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "abs.json", ABS);
    let out = envcalc_with(&["conjugate", "--instance", path(&f), "--probes", "-3:3:61", "--dual-grid", "-1:1:3"], Some("grid"));
    assert_eq!(code(&out), 0);
    let csv = stdout(&out);
    assert!(csv.starts_with("y,value\n"), "{csv}");
    assert!(rows(&csv).iter().all(|r| r[1].parse::<f64>().unwrap().abs() < 1e-9));
    let bad = envcalc_with(&["conjugate", "--instance", path(&f)], Some("symbolic"));
    assert_eq!(code(&bad), 2);
}

#[test]
fn clconv_closes_the_open_interval() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "open.json", OPEN_UNIT);
    let out = envcalc(&["clconv", "--instance", path(&f), "--probes", "-1:2:4"]);
    assert_eq!(code(&out), 0);
    let values: Vec<String> = rows(&stdout(&out)).into_iter().map(|r| r[1].clone()).collect();
    assert_eq!(values, ["inf", "0", "0", "inf"]);
}

#[test]
fn infconv_of_open_intervals_adds_them() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "open.json", OPEN_UNIT);
    let out = envcalc(&["infconv", "--instance", path(&f), "--instance", path(&f), "--probes", "0:2:5"]);
    assert_eq!(code(&out), 0);
    let values: Vec<String> = rows(&stdout(&out)).into_iter().map(|r| r[1].clone()).collect();
    assert_eq!(values, ["inf", "0", "0", "0", "inf"]);
    assert_eq!(code(&envcalc(&["infconv", "--instance", path(&f)])), 2);
}

#[test]
fn subdiff_of_the_open_interval_is_flat() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "open.json", OPEN_UNIT);
    let out = envcalc(&["subdiff", "--instance", path(&f), "--probes", "0:1:3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "x,y\n0.5,0\n");
}

#[test]
fn fitz_on_the_quadratic_gallery() {
    let out = envcalc(&["fitz", "--instance", "gallery:quadratic", "--probes", "1", "--dual-grid", "1"]);
    assert_eq!(code(&out), 0);
    let r = rows(&stdout(&out));
    assert_eq!(r.len(), 1);
    assert!((r[0][2].parse::<f64>().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn envelope_cup_of_the_open_interval_is_zero() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("cup.csv");
    let out = envcalc(&["envelope", "--kind", "cup", "--instance", "gallery:open-interval", "--out", path(&csv)]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("x,value,exact\n") && !text.contains('\r'));
    let r = rows(&text);
    assert_eq!(r.len(), 21);
    assert!(r.iter().all(|row| row[1] == "0"));
}

#[test]
fn envelope_exit_codes() {
    let open = "gallery:open-interval";
    assert_eq!(code(&envcalc(&["envelope", "--instance", open])), 2);
    assert_eq!(code(&envcalc(&["envelope", "--kind", "ncup", "--instance", open])), 2);
    assert_eq!(code(&envcalc(&["envelope", "--kind", "smileeps", "--instance", open])), 2);
    assert_eq!(code(&envcalc(&["envelope", "--kind", "bogus", "--instance", open])), 2);
    assert_eq!(code(&envcalc(&["envelope", "--kind", "smileeps", "--eps", "0", "--instance", open])), 3);
    assert_eq!(code(&envcalc(&["envelope", "--kind", "smile", "--instance", "gallery:quadratic"])), 3);
    let ncup = envcalc(&["envelope", "--kind", "ncup", "-n", "3", "--instance", "gallery:quadratic", "--probes", "-1:1:3"]);
    assert_eq!(code(&ncup), 0);
    let values: Vec<f64> = rows(&stdout(&ncup)).iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(values.iter().zip([0.5, 0.0, 0.5]).all(|(v, w)| (v - w).abs() < 1e-9), "{values:?}");
}

#[test]
fn envelope_kinds_on_the_open_interval() {
    let at = |kind: &str| -> Vec<String> {
        let out = envcalc(&["envelope", "--kind", kind, "--eps", "1/2", "--instance", "gallery:open-interval", "--probes", "-1:2:4"]);
        assert_eq!(code(&out), 0, "{kind}");
        rows(&stdout(&out)).into_iter().map(|r| r[1].clone()).collect()
    };
    assert_eq!(at("sharp"), ["0", "0", "0", "0"]);
    assert_eq!(at("circ"), ["inf", "0", "0", "inf"]);
    assert_eq!(at("smile"), ["0", "0", "0", "0"]);
    assert_eq!(at("smileeps"), ["0", "0", "0", "0"]);
    let star = envcalc(&["envelope", "--kind", "starcup", "--instance", "gallery:open-interval", "--dual-grid", "0"]);
    assert_eq!(stdout(&star), "y,value,exact\n0,0,0\n");
}

#[test]
fn hull_of_three_points_is_the_interval() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "pts.json", THREE_POINTS);
    let out = envcalc(&["hull", "--instance", path(&c), "--probes", "-1:3:9"]);
    assert_eq!(code(&out), 0);
    let m: Vec<String> = rows(&stdout(&out)).into_iter().map(|r| r[1].clone()).collect();
    assert_eq!(m, ["false", "false", "true", "true", "true", "true", "true", "false", "false"]);
}

#[test]
fn check_passes_and_fails_with_the_right_status() {
    let dir = TempDir::new().unwrap();
    let raised = write(&dir, "raised.json", RAISED);
    let ok = envcalc(&["check", "--instance", path(&raised), "--theorem", "fcirc.i"]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).starts_with("PASS"));
    let csv = dir.path().join("checks.csv");
    let bad = envcalc(&["check", "--instance", path(&raised), "--theorem", "fcirc.iii", "--out", path(&csv)]);
    assert_eq!(code(&bad), 1);
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("theorem_id,instance_id,verdict,margin,tolerance,backend\n"));
    assert!(text.contains("fcirc.iii,raised,fail,"));
    assert_eq!(code(&envcalc(&["check", "--instance", path(&raised), "--theorem", "nope"])), 2);
    assert_eq!(code(&envcalc(&["check"])), 2);
}

#[test]
fn malformed_and_nonconvex_files() {
    let dir = TempDir::new().unwrap();
    let broken = write(&dir, "broken.json", "{");
    assert_eq!(code(&envcalc(&["conjugate", "--instance", path(&broken)])), 2);
    let bent = r#"{"kind":"pl-convex-1d","breakpoints":["0","1","2"],"values":["0","1","0"],"left_slope":"-inf","right_slope":"inf"}"#;
    let bent = write(&dir, "bent.json", bent);
    assert_eq!(code(&envcalc(&["conjugate", "--instance", path(&bent)])), 3);
    assert_eq!(code(&envcalc(&["conjugate", "--instance", path(&dir.path().join("missing.json"))])), 2);
    assert_eq!(code(&envcalc(&["subdiff", "--instance", "gallery:quadratic"])), 3);
}

#[test]
fn suite_on_a_selection_that_holds() {
    let out = envcalc(&["suite", "--seed", "42", "-n", "30", "--theorem", "maxsdsp.iv", "--theorem", "dfdom.ineq"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains(" fail=0 ") && text.contains("seed=42 instances=30"), "{text}");
    assert_eq!(code(&envcalc(&["suite", "--theorem", "nope"])), 2);
}

#[test]
fn full_suite_fails_only_on_the_circ_statements() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("suite.csv");
    let out = envcalc(&["suite", "--seed", "42", "-n", "200", "--out", path(&csv)]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    let failing: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert!(!failing.is_empty());
    for line in &failing {
        let id = line.split_whitespace().nth(1).unwrap();
        assert!(["fcirc.ii", "fcirc.iii", "fcirc.iv"].contains(&id), "{line}");
        assert!(line.contains("pl-convex-with-override"), "{line}");
    }
    assert!(text.contains("seed=42 instances=200"));
    let table = fs::read_to_string(&csv).unwrap();
    assert_eq!(table.lines().filter(|l| l.contains(",fail,")).count(), failing.len());
}

#[test]
fn gallery_reproduces_and_exports_round_trip() {
    let dir = TempDir::new().unwrap();
    let out = envcalc(&["gallery", "--export", path(dir.path())]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
    for name in ["quadratic", "open-interval", "half-circle", "two-patch", "quadrant"] {
        for inst in gallery_instances(name).unwrap() {
            let file = dir.path().join(format!("{}.json", inst.id.replace(':', "-")));
            let text = fs::read_to_string(&file).unwrap();
            assert_eq!(Instance::from_json(&text).unwrap(), inst.instance, "{}", inst.id);
        }
    }
    assert_eq!(code(&envcalc(&["gallery", "nowhere"])), 2);
}

#[test]
fn suite_export_round_trips() {
    let dir = TempDir::new().unwrap();
    let out = envcalc(&["suite", "-n", "10", "--theorem", "dfdom.ineq", "--export", path(dir.path())]);
    assert_eq!(code(&out), 0);
    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 10);
    for f in files {
        let text = fs::read_to_string(&f).unwrap();
        let inst = Instance::from_json(&text).unwrap();
        assert_eq!(inst.to_json() + "\n", text);
    }
}

#[test]
fn bench_emits_a_timing_table() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("bench.csv");
    let out = envcalc(&["bench", "-n", "11", "--out", path(&csv)]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("n,brute_s,llt_s,ratio,max_error\n"));
    let r = rows(&text);
    assert_eq!(r.iter().map(|row| row[0].as_str()).collect::<Vec<_>>(), ["1024", "2048"]);
    assert_eq!(code(&envcalc(&["bench", "-n", "3"])), 2);
}
