//! End-to-end runs of the `qflag` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qflag(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qflag"));
    cmd.args(args).env_remove("QFLAG_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("QFLAG_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn lines_through_two_points() {
    let out = qflag(&["gw", "--dims", "1,3", "--a", "p[1]^2", "--b", "p[1]^2", "--c", "p[1]", "--degree", "1"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["integer"], "1");
}

#[test]
fn five_lines_in_the_plane() {
    let out = qflag(&["count-divisors", "--dims", "1,3", "--classes", "p[1]", "x5", "--degree", "1"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["integer"], "1");
}

#[test]
fn conics_through_five_points() {
    let out = qflag(&["count-divisors", "--dims", "1,3", "--classes", "p[1]", "x8", "--degree", "2"], None);
    assert_eq!(json(&out)["integer"], "1");
}

#[test]
fn grassmannian_product() {
    let out = qflag(&["multiply", "--dims", "2,4", "--a", "c[1][2]", "--b", "c[1][1]^2 - c[1][2]"], None);
    assert_eq!(json(&out)["product"], "q[1]");
}

#[test]
fn pairing_on_the_projective_line() {
    let out = qflag(&["pair", "--dims", "1,2", "--a", "1", "--b", "p[1]"], None);
    assert_eq!(json(&out)["pairing"], "1");
    let table = json(&qflag(&["pair", "--dims", "1,3", "--table"], None));
    assert_eq!(table["nondegenerate"], true);
    assert_eq!(table["basis"].as_array().unwrap().len(), 3);
}

#[test]
fn present_reports_the_rank() {
    let out = json(&qflag(&["present", "--dims", "1,2,3"], None));
    assert_eq!(out["rank"], 6);
    assert_eq!(out["degree_profile"], serde_json::json!([1, 2, 2, 1]));
    let eq = json(&qflag(&["present", "--dims", "1,2", "--equivariant"], None));
    assert_eq!(eq["relations"], serde_json::json!(["c[0][1] + c[1][1] - C[1]", "c[0][1]*c[1][1] + q[1] - C[2]"]));
}

#[test]
fn specialize_and_product() {
    let s = json(&qflag(&["specialize", "--dims", "1,2", "--equivariant", "--set", "c1=0", "--set", "c2=0"], None));
    assert_eq!(s["relations"], serde_json::json!(["c[0][1] + c[1][1]", "c[0][1]*c[1][1] + q[1]"]));
    let p = json(&qflag(&["product", "--dims", "1,2", "--with", "1,3"], None));
    assert_eq!(p["rank"], 6);
}

#[test]
fn induction_check_passes() {
    let out = qflag(&["induction-check", "--dims", "1,2,4", "--zero", "q1"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["holds"], true);
}

#[test]
fn error_exit_codes() {
    let unknown = qflag(&["multiply", "--dims", "1,2", "--a", "q[2]", "--b", "1"], None);
    assert_eq!(unknown.status.code(), Some(2));
    assert_eq!(json(&unknown)["error"]["code"], "usage");

    let bad_flag = qflag(&["present", "--dims", "3,2"], None);
    assert_eq!(bad_flag.status.code(), Some(2));

    let too_big = qflag(&["present", "--dims", "1,7"], None);
    assert_eq!(too_big.status.code(), Some(3));
    assert_eq!(json(&too_big)["error"]["code"], "resource_cap");

    let capped = qflag(&["present", "--dims", "1,2,3", "--max-generators", "1"], None);
    assert_eq!(capped.status.code(), Some(3));

    let missing = qflag(&["gw", "--dims", "1,3"], None);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn verify_reports_every_check() {
    let out = qflag(&["verify", "--max-n", "3"], None);
    let report = json(&out);
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 10);
    let failing: Vec<u64> = checks.iter().filter(|c| c["passed"] == false).map(|c| c["id"].as_u64().unwrap()).collect();
    // the stated equivariant P^1 value disagrees with the geometric orientation
    assert_eq!(failing, [9]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cache_hit_and_miss_give_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["present", "--dims", "1,2,4", "--equivariant"];
    let cold = qflag(&args, None);
    let miss = qflag(&args, Some(dir.path()));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let hit = qflag(&args, Some(dir.path()));
    assert_eq!(cold.stdout, miss.stdout);
    assert_eq!(miss.stdout, hit.stdout);

    let pair = ["pair", "--dims", "1,2,4", "--table"];
    assert_eq!(qflag(&pair, None).stdout, qflag(&pair, Some(dir.path())).stdout);
}

#[test]
fn residue_methods_agree() {
    let base = ["pair", "--dims", "1,3", "--equivariant", "--table"];
    let outs: Vec<Value> = ["symbolic", "specialized:11", "auto"]
        .iter()
        .map(|m| {
            let mut args = base.to_vec();
            args.extend(["--residue-method", m]);
            json(&qflag(&args, None))
        })
        .collect();
    assert_eq!(outs[0]["entries"], outs[1]["entries"]);
    assert_eq!(outs[1]["entries"], outs[2]["entries"]);
}

#[test]
fn text_and_latex_formats() {
    let text = qflag(&["multiply", "--dims", "1,3", "--a", "p[1]", "--b", "p[1]^2", "--format", "text"], None);
    assert!(String::from_utf8(text.stdout).unwrap().contains("product: q[1]"));
    let latex = qflag(&["multiply", "--dims", "1,3", "--a", "p[1]", "--b", "p[1]^2", "--format", "latex"], None);
    assert_eq!(String::from_utf8(latex.stdout).unwrap(), "\\[ a * b = q_{1} \\]\n");
}

#[test]
fn golden_outputs() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: [(&str, &[&str]); 2] = [
        ("present_1_2.json", &["present", "--dims", "1,2"]),
        ("gw_lines.json", &["gw", "--dims", "1,3", "--a", "p[1]^2", "--b", "p[1]^2", "--c", "p[1]", "--degree", "1"]),
    ];
    for (file, args) in cases {
        let expected = std::fs::read(golden.join(file)).unwrap();
        assert_eq!(qflag(args, None).stdout, expected, "{file}");
    }
}
