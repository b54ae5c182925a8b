use std::fs;
use std::path::Path;

use rcft_cli::golden::GoldenRecord;
use rcft_cli::{run_capture, EXIT_BUDGET, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn run(cmd: &str) -> (i32, String) {
    let argv: Vec<String> = cmd.split_whitespace().map(String::from).collect();
    run_capture(&argv)
}

fn run_json(cmd: &str) -> (i32, Value) {
    let (code, out) = run(cmd);
    let v = serde_json::from_str(out.trim()).unwrap_or_else(|e| panic!("{cmd}: {e}\n{out}"));
    (code, v)
}

fn golden_dir() -> std::path::PathBuf {
    rcft_cli::config::default_golden_dir()
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run("bogus").0, EXIT_USAGE);
    assert_eq!(run("model su2").0, EXIT_USAGE);
    assert_eq!(run("model su2 --k 0").0, EXIT_USAGE);
    assert_eq!(run("index jones").0, EXIT_USAGE);
    assert_eq!(run("classify vir --m 14 --reduced --full").0, EXIT_USAGE);
    assert_eq!(run("mtc check /nonexistent/file.json").0, EXIT_USAGE);
    assert_eq!(run("--help").0, EXIT_OK);
}

#[test]
fn json_errors_carry_exit_code() {
    let (code, v) = run_json("model su2 --k 0 --json");
    assert_eq!(code, EXIT_USAGE);
    assert_eq!(v["exit"], EXIT_USAGE);
    assert!(v["error"].is_string());
}

#[test]
fn su2_level_ten_has_three_invariants() {
    let (code, v) = run_json("invariants su2 --k 10 --json");
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["count"], 3);
    let labels: Vec<&str> = v["invariants"]
        .as_array()
        .unwrap()
        .iter()
        .map(|z| z["label"].as_str().unwrap())
        .collect();
    let mut sorted = labels.clone();
    sorted.sort();
    assert_eq!(sorted, ["A11", "D7", "E6"]);
}

#[test]
fn minimal_m12_is_exceptional() {
    let (code, v) = run_json("classify vir --m 12 --json");
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["exceptional"], true);
    assert_eq!(v["c"], "25/26");
    let (_, v) = run_json("classify vir --m 10 --json");
    assert_eq!(v["exceptional"], false);
}

#[test]
fn reduced_mode_is_chosen_above_the_ceiling() {
    let (code, v) = run_json("classify vir --m 14 --json");
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["mode"], "reduced");
    let (_, v) = run_json("classify vir --m 6 --reduced --json");
    assert_eq!(v["mode"], "reduced");
}

fn write_model(dir: &Path, cmd: &str) -> (std::path::PathBuf, Value) {
    let (code, v) = run_json(cmd);
    assert_eq!(code, EXIT_OK, "{cmd}");
    let data = v["data"].clone();
    let path = dir.join("model.json");
    fs::write(&path, serde_json::to_string(&data).unwrap()).unwrap();
    (path, data)
}

#[test]
fn mtc_check_round_trip_and_perturbation() {
    let tmp = tempfile::tempdir().unwrap();
    for cmd in ["model su2 --k 4 --json", "model minimal --m 4 --json"] {
        let (path, mut data) = write_model(tmp.path(), cmd);
        let (code, out) = run(&format!("mtc check {}", path.display()));
        assert_eq!(code, EXIT_OK, "{out}");

        let x = data["S"][0][1][0].as_f64().unwrap();
        data["S"][0][1][0] = Value::from(x + 1e-3);
        data["S"][1][0][0] = Value::from(x + 1e-3);
        let bad = tmp.path().join("bad.json");
        fs::write(&bad, serde_json::to_string(&data).unwrap()).unwrap();
        let (code, v) = run_json(&format!("mtc check {} --json", bad.display()));
        assert_eq!(code, EXIT_FAILED);
        assert_eq!(v["pass"], false);
    }
}

#[test]
fn mtc_check_accepts_full_reports() {
    let tmp = tempfile::tempdir().unwrap();
    let (_, v) = run_json("model su2 --k 3 --json");
    let path = tmp.path().join("report.json");
    fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(run(&format!("mtc check {}", path.display())).0, EXIT_OK);
}

#[test]
fn fusion_check_flags_bad_rings() {
    let tmp = tempfile::tempdir().unwrap();
    let (_, v) = run_json("model su2 --k 2 --json");
    let mut ring = v["data"]["ring"].clone();
    let path = tmp.path().join("ring.json");
    fs::write(&path, serde_json::to_string(&ring).unwrap()).unwrap();
    let (code, v) = run_json(&format!("fusion check {} --json", path.display()));
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["valid"], true);
    assert!((v["w"].as_f64().unwrap() - 4.0).abs() < 1e-9);

    ring["N"][1][1][2] = Value::from(0);
    fs::write(&path, serde_json::to_string(&ring).unwrap()).unwrap();
    let (code, v) = run_json(&format!("fusion check {} --json", path.display()));
    assert_eq!(code, EXIT_FAILED);
    assert_eq!(v["valid"], false);
}

#[test]
fn jones_index_modes() {
    let (code, v) = run_json("index jones --n 6 --json");
    assert_eq!(code, EXIT_OK);
    assert!(v.to_string().contains('3'));
    assert_eq!(run("index jones --test 4.2").0, EXIT_OK);
    assert_eq!(run("index jones --test 2").0, EXIT_OK);
    assert_eq!(run("index jones --test 3.5").0, EXIT_FAILED);
    assert_eq!(run("index jones --test -1").0, EXIT_FAILED);
}

#[test]
fn moonshine_commands() {
    let (code, v) = run_json("moonshine j --nmax 2 --json");
    assert_eq!(code, EXIT_OK);
    let c = v["coefficients"].as_array().unwrap();
    let one = c.iter().find(|e| e["n"] == 1).unwrap();
    assert_eq!(one["j"], "196884");
    let zero = c.iter().find(|e| e["n"] == 0).unwrap();
    assert_eq!(zero["j"], "744");
    assert_eq!(zero["J"], "0");
    assert_eq!(run("moonshine mckay").0, EXIT_OK);
    let (code, out) = run("moonshine monster-order");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("808017424794512875886459904961710757005754368000000000"));
}

#[test]
fn golden_pristine_passes() {
    let (code, v) = run_json(&format!(
        "golden verify --dir {} --json",
        golden_dir().display()
    ));
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["pass"], true);
    assert_eq!(v["checked"], 15);
}

#[test]
fn golden_single_edit_is_one_mismatch() {
    let tmp = tempfile::tempdir().unwrap();
    for entry in fs::read_dir(golden_dir()).unwrap() {
        let p = entry.unwrap().path();
        fs::copy(&p, tmp.path().join(p.file_name().unwrap())).unwrap();
    }
    let target = tmp.path().join("boundary_m05.json");
    let mut rec: GoldenRecord =
        serde_json::from_str(&fs::read_to_string(&target).unwrap()).unwrap();
    rec.output = rec.output.replacen("\"count\":10", "\"count\":11", 1);
    rec.sha256 = rcft_cli::golden::sha256_hex(&rec.output);
    fs::write(&target, serde_json::to_string_pretty(&rec).unwrap()).unwrap();

    let (code, v) = run_json(&format!(
        "golden verify --dir {} --json",
        tmp.path().display()
    ));
    assert_eq!(code, EXIT_FAILED);
    let mism = v["mismatches"].as_array().unwrap();
    assert_eq!(mism.len(), 1);
    assert_eq!(mism[0]["file"], "boundary_m05.json");
}

#[test]
fn golden_tampered_hash_is_reported() {
    let tmp = tempfile::tempdir().unwrap();
    let src = golden_dir().join("moonshine_j_q50.json");
    let mut rec: GoldenRecord = serde_json::from_str(&fs::read_to_string(src).unwrap()).unwrap();
    rec.output.push(' ');
    fs::write(
        tmp.path().join("moonshine_j_q50.json"),
        serde_json::to_string(&rec).unwrap(),
    )
    .unwrap();
    let (code, v) = run_json(&format!(
        "golden verify --dir {} --json",
        tmp.path().display()
    ));
    assert_eq!(code, EXIT_FAILED);
    assert!(v["mismatches"][0]["reason"]
        .as_str()
        .unwrap()
        .contains("hash"));
}

#[test]
fn golden_empty_dir_is_vacuous_pass() {
    let tmp = tempfile::tempdir().unwrap();
    let (code, v) = run_json(&format!(
        "golden verify --dir {} --json",
        tmp.path().display()
    ));
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["checked"], 0);
    assert!(v["warning"].is_string());
}

#[test]
fn exit_code_constants_are_distinct() {
    let mut codes = [EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_BUDGET];
    codes.sort();
    assert_eq!(codes, [0, 1, 2, 3]);
}
