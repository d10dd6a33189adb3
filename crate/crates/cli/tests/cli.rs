use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadres"))
        .args(args)
        .env_remove("QUADRES_MAX_CELLS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut args = args.to_vec();
    args.push("--json");
    let out = run(&args);
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("quadres-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn envelope_fields() {
    for args in [
        &["trace", "5", "7"][..],
        &["symbol", "5", "7", "--verify"],
        &["solve", "7", "11", "--both"],
        &["verify", "--max-n", "6", "--checks", "tilings"],
        &["render", "3", "5"],
    ] {
        let (code, v) = json(args);
        assert_eq!(code, 0, "{args:?}");
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["command", "inputs", "result", "checks"], "{args:?}");
        assert_eq!(v["command"], args[0]);
        for field in ["m", "n", "flags"] {
            assert!(v["inputs"].get(field).is_some(), "{args:?} lacks inputs.{field}");
        }
        for c in v["checks"].as_array().unwrap() {
            assert!(c["name"].is_string());
            assert!(["pass", "fail", "skip"].contains(&c["status"].as_str().unwrap()));
            assert!(c.get("witness").is_some());
        }
    }
}

#[test]
fn trace_examples() {
    let out = run(&["trace", "1", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "no bounces; end (1,1)\n");
    let (code, v) = json(&["trace", "6", "9"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["length"], 18);
    assert_eq!(v["result"]["end"], serde_json::json!([0, 6]));
}

#[test]
fn symbol_examples() {
    let out = run(&["symbol", "6", "9"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("(6|9) = 0"));
    let (code, v) = json(&["symbol", "5", "8", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["methods"]["billiards"], 1);
    assert_eq!(v["result"]["methods"]["zolotarev"], 1);
}

#[test]
fn solve_kernel_and_conflicts() {
    let (code, v) = json(&["solve", "6", "9", "--kernel"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 12);
    let (code, v) = json(&["solve", "6", "9", "--bottom-row"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["kernel_witness"].as_array().unwrap().len(), 12);
    assert_eq!(json(&["solve", "5", "7", "--kernel"]).0, 1);
}

#[test]
fn solve_pebbles_round_trip() {
    let (code, v) = json(&["solve", "5", "7", "--pebble", "3", "0", "--pebble", "0", "1"]);
    assert_eq!(code, 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
    let out = run(&["solve", "5", "7", "--bottom-row", "--render", "ascii"]);
    assert!(stdout(&out).ends_with(".O.#.O\nO.O.O.\n.O.#.#\n#o#oOo\n"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["trace", "0", "7"][..],
        &["trace", "5"],
        &["trace", "5", "7", "--render", "ascii"],
        &["solve", "5", "7"],
        &["solve", "5", "7", "--bottom-row", "--both"],
        &["solve", "5", "7", "--pebble", "0", "0"],
        &["verify", "--checks", "legendre"],
        &["verify", "--max-n", "1000"],
        &["verify", "--parallelism", "0"],
        &["render", "5", "7", "--split", "9"],
        &["render", "5", "7", "--cell-px", "2"],
        &["symbol", "5", "7", "--render", "svg"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn cell_limit_from_env() {
    let base = || {
        let mut c = Command::new(env!("CARGO_BIN_EXE_quadres"));
        c.args(["verify", "--max-n", "8", "--checks", "supplements"]);
        c
    };
    assert_eq!(base().env("QUADRES_MAX_CELLS", "63").output().unwrap().status.code(), Some(2));
    assert_eq!(base().env("QUADRES_MAX_CELLS", "64").output().unwrap().status.code(), Some(0));
    assert_eq!(base().env("QUADRES_MAX_CELLS", "lots").output().unwrap().status.code(), Some(2));
}

#[test]
fn verify_output_is_reproducible() {
    let a = run(&["verify", "--max-n", "12", "--parallelism", "1"]);
    let b = run(&["verify", "--max-n", "12", "--parallelism", "5"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&a);
    assert_eq!(text.lines().filter(|l| l.ends_with("PASS")).count(), 11);
    assert!(text.ends_with("0 failures\n"));
    let (_, ja) = json(&["verify", "--max-n", "12", "--parallelism", "1"]);
    let (_, jb) = json(&["verify", "--max-n", "12", "--parallelism", "3"]);
    assert_eq!(ja["result"], jb["result"]);
    assert_eq!(ja["checks"], jb["checks"]);
}

#[test]
fn svg_files_get_extension() {
    let target = scratch("path");
    let out = run(&["render", "5", "7", "--split", "2", "--out", target.to_str().unwrap()]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(target.with_extension("svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    quadres::render::check_svg_structure(&svg).unwrap();

    let board = scratch("board.svg");
    let out = run(&["solve", "5", "7", "--bottom-row", "--render", "svg", "--out", board.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("count s = 7"));
    quadres::render::check_svg_structure(&std::fs::read_to_string(&board).unwrap()).unwrap();
}

#[test]
fn json_to_file() {
    let target = scratch("trace.json");
    let out = run(&["trace", "5", "7", "--json", "--out", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["result"]["length"], 35);
}
