//! End-to-end behaviour of the `p2walls` executable.

use std::process::{Command, Output};

use p2walls::parse::{parse_character, parse_rational};
use p2walls::sweep::{sweep_lines, SweepSpec};
use p2walls::{ample_cmd, Format, SCHEMA};
use p2walls_core::exactmath::{fmt_rat, rat};
use p2walls_core::ChernChar;
use proptest::prelude::*;
use serde_json::Value;

fn p2walls(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_p2walls"))
        .args(args)
        .env_remove("P2WALLS_SEARCH_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = p2walls(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

#[test]
fn golden_outputs() {
    let cases: [(&str, &[&str]); 5] = [
        ("classify_special.txt", &["classify", "6:1/3:13/18"]),
        ("wall_6_half.txt", &["wall", "6:1/2:17/24"]),
        ("ample_special.json", &["--json", "ample", "6,2,-4"]),
        ("ample_hilb2.json", &["--json", "ample", "1,0,-2"]),
        ("delta_third.txt", &["delta", "1/3", "--rank", "6"]),
    ];
    for (file, args) in cases {
        assert_eq!(stdout(args), golden(file), "{file}");
    }
}

#[test]
fn byte_determinism() {
    let commands: [&[&str]; 6] = [
        &["--json", "ample", "5:3/5:17/25"],
        &["extremal", "4:1/2:7/8"],
        &["wall", "2:1/2:7/8"],
        &["exclude", "6:1/2:17/24"],
        &["tables", "verify", "--table", "3"],
        &["sweep", "--min-rank", "1", "--max-rank", "3", "--steps", "2"],
    ];
    for args in commands {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn json_matches_schema() {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for text in ["6,2,-4", "1,0,-2", "2:1/2:7/8", "5:4/5:23/25", "6:1/2:17/24", "4:-3/4:29/32"] {
        let out = ample_cmd(text, Format::Json, 4).unwrap();
        let value: Value = serde_json::from_str(&out).unwrap();
        let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{text}: {errors:?}");
    }
    for line in stdout(&["sweep", "--max-rank", "4", "--steps", "2"]).lines() {
        let item: Value = serde_json::from_str(line).unwrap();
        assert!(validator.is_valid(&item["report"]), "{line}");
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| p2walls(args).status.code();
    assert_eq!(code(&["classify", "1,0,0"]), Some(0));
    assert_eq!(code(&["classify", "nonsense"]), Some(2));
    assert_eq!(code(&["classify", "3:1/2:0"]), Some(2));
    assert_eq!(code(&["ample", "6:5/6:55/72"]), Some(2));
    assert_eq!(code(&["wall", "3:1/3:2/9"]), Some(2));
    for t in ["1", "2", "3"] {
        assert_eq!(code(&["tables", "verify", "--table", t]), Some(0));
    }
    let err = String::from_utf8(p2walls(&["classify", "3:1/2:0"]).stderr).unwrap();
    assert!(err.contains("not-integral"), "{err}");
}

#[test]
fn tables_report_counts() {
    assert!(stdout(&["tables", "verify", "--table", "1"]).ends_with("table 1: 15/15 checks match\n"));
    assert!(stdout(&["tables", "verify", "--table", "2"]).ends_with("table 2: 15/15 checks match\n"));
    let t3 = stdout(&["tables", "verify", "--table", "3"]);
    assert!(t3.ends_with("table 3: 28/28 checks match\n"));
    assert_eq!(t3.lines().filter(|l| l.starts_with("info")).count(), 15);
}

#[test]
fn svg_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for path in [&a, &b] {
        stdout(&["wall", "6:1/3:13/18", "--svg", path.to_str().unwrap(), "--nested", "4"]);
    }
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
    assert!(svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("class=\"vertical\""));
    assert!(svg.contains("class=\"gieseker\""));
}

fn sweep(min: i64, max: i64, slopes: &[&str], steps: usize) -> Vec<Value> {
    let spec = SweepSpec {
        min_rank: min,
        max_rank: max,
        slopes: Some(slopes.iter().map(|s| parse_rational(s).unwrap()).collect()),
        steps,
    };
    sweep_lines(&spec, 4)
        .unwrap()
        .iter()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn sweep_x_plus_increases() {
    let items = sweep(6, 6, &["1/2"], 5);
    assert_eq!(items.len(), 5);
    let xs: Vec<f64> = items
        .iter()
        .map(|i| {
            i["report"]["gieseker"]["wall"]["x_plus"]["decimal"]
                .as_str()
                .unwrap()
                .parse()
                .unwrap()
        })
        .collect();
    assert!(xs.windows(2).all(|w| w[0] < w[1]), "{xs:?}");
}

#[test]
fn sweep_ideal_sheaf_centers() {
    let items = sweep(1, 1, &["0"], 4);
    let pairs: Vec<(String, String)> = items
        .iter()
        .map(|i| {
            (
                i["input"]["disc"].as_str().unwrap().to_string(),
                i["report"]["gieseker"]["wall"]["center"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    let expect = [("2", "-5/2"), ("3", "-7/2"), ("4", "-9/2")];
    for (disc, center) in expect {
        assert!(pairs.contains(&(disc.to_string(), center.to_string())), "{pairs:?}");
    }
}

#[test]
fn sweep_empty_range() {
    assert!(sweep(3, 2, &["1/2"], 3).is_empty());
    assert!(stdout(&["sweep", "--min-rank", "5", "--max-rank", "4"]).is_empty());
}

#[test]
fn sweep_errors_stay_in_stream() {
    // Rank 6, slope 1/3 starts at the special character, which is fine; the
    // stream never aborts even when an item fails.
    let items = sweep(1, 6, &["1/3", "1/2", "1"], 3);
    assert!(!items.is_empty());
    for item in &items {
        assert!(item.get("report").is_some() ^ item.get("error").is_some());
    }
}

fn character() -> impl Strategy<Value = ChernChar> {
    (-12i64..=12, -40i64..=40, -60i64..=60).prop_map(|(r, c1, k)| {
        // ch2 ≡ c1²/2 mod ℤ keeps χ integral.
        let base = if c1.rem_euclid(2) == 1 { rat(1, 2) } else { rat(0, 1) };
        ChernChar::new(r, c1, base + rat(k, 1)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn parse_round_trip(xi in character()) {
        let raw = format!("{},{},{}", xi.rank(), xi.c1(), fmt_rat(xi.ch2()));
        prop_assert_eq!(parse_character(&raw).unwrap(), xi.clone());
        prop_assert_eq!(parse_character(&xi.to_invariant_string()).unwrap(), xi.clone());
        let spaced = format!("( {} , {} , {} )", xi.rank(), xi.c1(), fmt_rat(xi.ch2()));
        prop_assert_eq!(parse_character(&spaced).unwrap(), xi);
    }
}
