use std::path::PathBuf;
use std::process::{Command, Output};

use braidcat::graded_braid::{BraidingSpec, LatticeSpec};
use braidcat::yd_uproll::{presets, RankOne, YDModule, YdModuleSpec};
use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidcat")).args(args).output().expect("binary runs")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn fusion_example() {
    let o = run(&["fusion", "--p", "2", "M:0,1", "M:0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["terms"], json!({"M:-1,1": 1}));
    assert_eq!(v["level"], "module");
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn nichols_rank_one_example() {
    let v = json_of(&run(&["nichols", "--preset", "rank1", "--p", "3", "--max-degree", "5"]));
    assert_eq!(v["hilbert"], json!([1, 1, 1, 0, 0, 0]));
    assert_eq!(v["dimensions"]["2"], 1);
}

#[test]
fn triplet_discriminant_example() {
    let v = json_of(&run(&["lattice", "--preset", "triplet", "--p", "2", "discriminant"]));
    assert_eq!(v["group"], "Z4");
    assert_eq!(v["Q"], json!(["1", "zeta8", "zeta2", "zeta8"]));
}

#[test]
fn output_is_deterministic() {
    let args = ["nichols", "--preset", "a2", "--p", "3", "--max-degree", "7", "--relations"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["fusion", "--p", "2", "M:0,1"]).status.code(), Some(2));
    assert_eq!(run(&["fusion", "--p", "2", "Q:1", "M:0,1"]).status.code(), Some(2));
    assert_eq!(run(&["nichols", "--preset", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["lattice", "--p", "2"]).status.code(), Some(2));
}

#[test]
fn failed_checks_exit_one() {
    let o = run(&["uproll", "--preset", "violating", "--p", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json_of(&o)["error"].as_str().unwrap().contains("monodromy"));
    let o = run(&["yd-check", "--preset", "flipped", "--p", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_of(&o)["violation"]["power"], 1);
}

#[test]
fn hopf_presets_pass() {
    for preset in ["uq-sl2", "uq-h-sl2", "usp", "ugl11"] {
        let o = run(&["hopf", "--preset", preset, "--p", "3"]);
        assert_eq!(o.status.code(), Some(0), "{preset}: {}", String::from_utf8_lossy(&o.stdout));
        let v = json_of(&o);
        assert!(v["results"].as_array().unwrap().iter().all(|r| r["status"] == "pass"));
    }
    let v = json_of(&run(&["hopf", "--preset", "uq-sl2", "--p", "2", "--check", "antipode"]));
    assert_eq!(v["results"].as_array().unwrap().len(), 1);
}

#[test]
fn tensor_decomposition() {
    // M_{1,1} is the unit; M_{0,1} is one-dimensional of weight p, shifting c by −p/2
    let v = json_of(&run(&["tensor", "--p", "3", "--left", "M:1,1", "--right", "F:1/4"]));
    assert_eq!(v["decomposition"], json!([{"label": "F:1/4", "multiplicity": 1}]));
    let v = json_of(&run(&["tensor", "--p", "3", "--left", "M:0,1", "--right", "F:1/4"]));
    assert_eq!(v["decomposition"], json!([{"label": "F:-5/4", "multiplicity": 1}]));
    let v = json_of(&run(&["tensor", "--p", "2", "--left", "M:0,2", "--right", "M:0,2"]));
    let total: u64 = v["decomposition"].as_array().unwrap().iter().map(|t| t["multiplicity"].as_u64().unwrap()).sum();
    assert!(total >= 1);
    assert_eq!(v["dim"], 4);
}

#[test]
fn uproll_presets() {
    let v = json_of(&run(&["uproll", "--preset", "triplet", "--p", "3", "--nichols-degree", "5"]));
    assert_eq!(v["group"], "Z6");
    assert_eq!(v["generators"][0]["residue"], json!([4]));
    assert_eq!(v["nichols_preserved"], true);
    let v = json_of(&run(&["uproll", "--preset", "gl11", "--hbar", "2/5"]));
    assert_eq!(v["generators"][0]["degree"], json!(["-1", "0", "-1"]));
    assert_eq!(v["generators"][0]["induced_self_braiding"], "zeta2");
    let v = json_of(&run(&["uproll", "--preset", "sp", "--p", "3", "--target", "all"]));
    assert_eq!(v["target"], "all");
}

#[test]
fn uproll_from_files_matches_preset() {
    let (x, l) = presets::triplet(4).unwrap();
    let b = tmp("triplet4_braiding.json", &serde_json::to_string(&BraidingSpec::from_object(&x)).unwrap());
    let r = tmp("triplet4_lattice.toml", &toml::to_string(&LatticeSpec::from_lattice(&l)).unwrap());
    let from_files = run(&["uproll", "--braiding", b.to_str().unwrap(), "--lattice", r.to_str().unwrap()]);
    let from_preset = run(&["uproll", "--preset", "triplet", "--p", "4"]);
    assert_eq!(from_files.status.code(), Some(0));
    assert_eq!(from_files.stdout, from_preset.stdout);
}

#[test]
fn yd_check_module_file() {
    let base = RankOne::singlet(3).unwrap();
    let m = YDModule::verma(&base).unwrap();
    let f = tmp("verma3.json", &serde_json::to_string(&YdModuleSpec::from_module(&m)).unwrap());
    let o = run(&["yd-check", "--module", f.to_str().unwrap(), "--linking"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["yd"], true);
    assert_eq!(v["dim"], 3);

    let mut bad = m.clone();
    bad.action = bad.action.scale(&braidcat::CycNum::from_int(2));
    let f = tmp("verma3_bad.json", &serde_json::to_string(&YdModuleSpec::from_module(&bad)).unwrap());
    assert_eq!(run(&["yd-check", "--module", f.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn yd_family_report() {
    let o = run(&["yd-check", "--preset", "family", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["ok"], true);
    assert_eq!(v["both_directions"], true);
}

#[test]
fn config_file_supplies_flags() {
    let c = tmp("fusion.toml", "p = 3\nargs = [\"M:0,2\", \"M:0,2\"]\n");
    let v = json_of(&run(&["--config", c.to_str().unwrap(), "fusion"]));
    assert_eq!(v["terms"], json!({"M:-1,1": 1, "M:-1,3": 1}));
    // explicit arguments win over the config
    let v = json_of(&run(&["fusion", "--config", c.to_str().unwrap(), "--p", "2", "M:0,1", "M:0,1"]));
    assert_eq!(v["p"], 2);
    assert_eq!(v["terms"], json!({"M:-1,1": 1}));
    let c = tmp("nichols.toml", "preset = \"rank1\"\np = 4\nmax_degree = 6\n");
    let v = json_of(&run(&["--config", c.to_str().unwrap(), "nichols"]));
    assert_eq!(v["hilbert"], json!([1, 1, 1, 1, 0, 0, 0]));
}

#[test]
fn text_format_renders() {
    let o = run(&["lattice", "--preset", "triplet", "--p", "3", "discriminant", "--format", "text"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.contains("group: Z6"));
}

#[test]
fn acceptance_subcommand_passes() {
    let o = run(&["acceptance", "--format", "text"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert_eq!(o.status.code(), Some(0), "{s}");
    assert_eq!(s.lines().filter(|l| l.starts_with("PASS")).count(), 12);
}
