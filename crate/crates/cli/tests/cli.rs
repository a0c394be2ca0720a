use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cherednik-lab"))
        .args(args)
        .env_remove("CHEREDNIK_LAB_CONFIG")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn char_formula_example_passes() {
    let out = lab(&["verify", "thm-char-A", "--n", "3", "--r", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["computed"]["total"], 4);
    assert!(r["witness"].is_null());
}

#[test]
fn report_schema_is_stable() {
    let out = lab(&["verify", "solomon", "--type", "B", "--n", "2", "--json"]);
    let r = json_of(&out);
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["check", "computed", "expected", "inputs", "ms", "status", "version", "witness"]);
    assert!(r["ms"].is_u64());
    assert!(r["inputs"].is_object() && r["expected"].is_object() && r["computed"].is_object());
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn excluded_value_is_not_finite_with_exit_zero() {
    let out = lab(&["simple", "dim", "--type", "A", "--n", "4", "--c", "1/2", "--max-degree", "24", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["computed"]["verdict"], "not finite up to bound 24");
}

#[test]
fn failing_check_exits_one_with_a_witness() {
    let out = lab(&["verify", "sommers", "--type", "A", "--n", "4", "--r", "2", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json_of(&out);
    assert_eq!(r["status"], "fail");
    assert_eq!(r["witness"]["key"], "lattice_traces");
}

#[test]
fn non_coprime_r_is_a_usage_error() {
    // 6 is not coprime to h = 3
    let out = lab(&["verify", "thm-char-A", "--n", "3", "--r", "6"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lab(&["verify", "thm-perv-euler", "--n", "3", "--r", "2", "--json"]);
    assert_eq!(json_of(&out)["status"], "pass");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(lab(&["simple", "--type", "X", "--n", "3", "--c", "1/3"]).status.code(), Some(2));
    assert_eq!(lab(&["simple", "--type", "A", "--n", "3"]).status.code(), Some(2));
    assert_eq!(lab(&["simple", "--n", "3", "--c", "one"]).status.code(), Some(2));
    assert_eq!(lab(&["verify", "no-such-check"]).status.code(), Some(2));
    assert_eq!(lab(&["--bogus"]).status.code(), Some(2));
}

#[test]
fn exceeded_bound_exits_three() {
    let out = lab(&["verify", "sommers", "--type", "B", "--n", "4", "--r", "40", "--json"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out)["status"], "bound-exceeded");
}

#[test]
fn verify_output_is_deterministic() {
    let args = ["verify", "spherical", "--n", "3", "--r", "4", "--json", "--no-timing"];
    let (a, b) = (lab(&args), lab(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["ms"], 0);
}

#[test]
fn table_aligns_dims_by_degree() {
    let out = lab(&["simple", "--type", "A", "--n", "3", "--c", "2/3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let deg = text.lines().find(|l| l.trim_start().starts_with("degree")).expect("degree row");
    let dim = text.lines().find(|l| l.trim_start().starts_with("dim ")).expect("dim row");
    assert_eq!(deg.len(), dim.len());
    assert!(dim.split_whitespace().skip(1).eq(["1", "2", "1"]));
}

#[test]
fn negative_parameter_goes_through_the_sign_twist() {
    let out = lab(&["simple", "--type", "A", "--n", "3", "--c", "-2/3", "--tau", "sign", "--json"]);
    let r = json_of(&out);
    assert_eq!(r["computed"]["total"], 4);
    assert_eq!(r["computed"]["twist"]["c"], "(2/3)");
    assert_eq!(r["computed"]["twist"]["signs"], serde_json::json!([-1]));
}

fn cache_files(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for d in fs::read_dir(dir).unwrap().flatten() {
        assert_eq!(d.file_name().len(), 2);
        for f in fs::read_dir(d.path()).unwrap().flatten() {
            out.push(f.path());
        }
    }
    out
}

#[test]
fn second_b4_run_is_a_cache_hit() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["simple", "--type", "B", "--n", "4", "--c1", "1/2", "--c2", "0", "--max-degree", "12", "--json", "--no-timing", "--cache-dir", cache];
    let first = lab(&args);
    assert_eq!(json_of(&first)["computed"]["total"], 66);
    assert!(!String::from_utf8_lossy(&first.stderr).contains("cache hit"));
    let files = cache_files(dir.path());
    assert_eq!(files.len(), 1);
    let name = files[0].file_stem().unwrap().to_str().unwrap().to_string();
    assert_eq!(&name[..2], files[0].parent().unwrap().file_name().unwrap().to_str().unwrap());

    let second = lab(&args);
    assert!(String::from_utf8_lossy(&second.stderr).contains("cache hit"));
    assert_eq!(first.stdout, second.stdout);

    fs::write(&files[0], "{ truncated").unwrap();
    let third = lab(&args);
    assert!(String::from_utf8_lossy(&third.stderr).contains("corrupted"));
    assert_eq!(first.stdout, third.stdout);
    let fourth = lab(&args);
    assert!(String::from_utf8_lossy(&fourth.stderr).contains("cache hit"));

    let stats = json_of(&lab(&["cache", "stats", "--json", "--cache-dir", cache]));
    assert_eq!(stats["computed"]["stats"]["entries"], 1);
    lab(&["cache", "clear", "--cache-dir", cache]);
    assert!(cache_files(dir.path()).is_empty());
}

#[test]
fn config_file_supplies_the_default_bound() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("lab.json");
    fs::write(&cfg, r#"{ "max_degree": 12 }"#).unwrap();
    let args = ["simple", "--type", "A", "--n", "4", "--c", "1/2", "--json"];
    let out = Command::new(env!("CARGO_BIN_EXE_cherednik-lab"))
        .args(args)
        .env("CHEREDNIK_LAB_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["computed"]["verdict"], "not finite up to bound 12");
    // the flag wins over the file
    let mut with_flag = args.to_vec();
    with_flag.extend(["--max-degree", "14", "--config", cfg.to_str().unwrap()]);
    assert_eq!(json_of(&lab(&with_flag))["computed"]["verdict"], "not finite up to bound 14");
    fs::write(&cfg, r#"{ "bound": 3 }"#).unwrap();
    let bad = lab(&["group", "--n", "3", "--config", cfg.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn group_and_other_subcommands() {
    let g = json_of(&lab(&["group", "--type", "B", "--n", "2", "--json"]));
    assert_eq!(g["status"], "pass");
    assert_eq!(g["computed"]["order"], 8);
    assert_eq!(g["computed"]["reflection_class_sizes"], serde_json::json!([2, 2]));

    let s = json_of(&lab(&["singular", "--type", "A", "--n", "3", "--c", "2/3", "--degree", "2", "--json"]));
    assert_eq!(s["computed"]["dim"], 2);

    let st = json_of(&lab(&["standard", "--type", "A", "--n", "3", "--c", "2/3", "--tau", "ext:1", "--max-degree", "3", "--json"]));
    assert_eq!(st["status"], "pass");
    assert_eq!(st["computed"]["layer_dims"], serde_json::json!([2, 4, 6, 8]));

    let sp = json_of(&lab(&["spherical", "--type", "A", "--n", "3", "--c", "4/3", "--json"]));
    assert_eq!(sp["computed"]["total"], 5);

    let h = json_of(&lab(&["hecke", "--partition", "3,1", "--e", "5", "--json"]));
    assert_eq!(h["computed"]["gram_rank"], 3);
    assert_eq!(h["computed"]["e_core"], true);
    assert_eq!(lab(&["hecke", "--n", "4"]).status.code(), Some(0));

    let q = json_of(&lab(&["quiver", "--n", "3", "--r", "2", "--json"]));
    assert_eq!(q["status"], "pass");
    assert_eq!(q["computed"]["dim"], 9);
}

#[test]
fn d4_example_passes() {
    let out = lab(&["verify", "d4-example", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["computed"]["n_dim"], 81);
    assert_eq!(r["computed"]["singular_dim_degree_3"], 4);
}

#[test]
fn list_names_every_registered_check() {
    let out = String::from_utf8(lab(&["verify", "list"]).stdout).unwrap();
    for name in [
        "thm-char-A", "thm-perv-euler", "solomon", "sommers", "catalan", "spherical", "gorenstein", "b-family",
        "d-family", "d4-example", "hecke-hooks", "quiver-cartan", "shephard-todd", "onedim", "epsilon-twist",
    ] {
        assert!(out.lines().any(|l| l.split_whitespace().next() == Some(name)), "{name}");
    }
}
