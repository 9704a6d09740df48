use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden")
}

fn loft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loft")).args(args).current_dir(golden_dir()).output().expect("loft runs")
}

/// (expected file, exit code, arguments)
const CASES: &[(&str, i32, &[&str])] = &[
    ("saturate_lo_example", 0, &["saturate", "lo_example.lo"]),
    ("saturate1_lo1_example", 0, &["saturate1", "lo1_example.lo1", "--max-iters", "10"]),
    ("saturate1_doubling", 2, &["saturate1", "doubling.lo1", "--max-iters", "50"]),
    ("check_lo1_example", 0, &["check", "lo1_example.lo1"]),
    ("oracle_lo_example", 0, &["oracle", "lo_example.lo", "--cap", "3"]),
    ("prove_lo_example", 0, &["prove", "lo_example.lo", "--goal", "e, e", "--depth", "8"]),
    ("dlp_lfp_disjunctive", 0, &["dlp", "lfp", "disjunctive.dlp"]),
    ("dlp_refute_disjunctive", 0, &["dlp", "refute", "disjunctive.dlp", "--goal", "p ; q", "--depth", "8"]),
    ("dlp_compare_flat", 0, &["dlp", "compare", "flat.lo"]),
    ("dlp_compare_chain", 0, &["dlp", "compare", "chain.lo"]),
    ("petri_encode_mutex", 0, &["petri", "encode", "mutex.net"]),
    ("petri_encode_transfer", 0, &["petri", "encode", "transfer.net"]),
    ("petri_cover_mutex", 0, &["petri", "cover", "mutex.net"]),
    ("petri_cover_lockless", 0, &["petri", "cover", "lockless.net"]),
    ("petri_cover_transfer", 0, &["petri", "cover", "transfer.net", "--max-iters", "12"]),
    ("petri_explore_mutex", 0, &["petri", "explore", "mutex.net", "--steps", "12", "--max-size", "10"]),
];

fn report(args: &[&str]) -> Value {
    let out = loft(args);
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
}

#[test]
fn recorded_reports_reproduce_exactly() {
    for (name, code, args) in CASES {
        let out = loft(args);
        let expected = std::fs::read_to_string(golden_dir().join("expected").join(format!("{name}.json"))).unwrap();
        assert_eq!(String::from_utf8_lossy(&out.stdout), expected, "{name}");
        assert_eq!(out.status.code(), Some(*code), "{name}");
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    for (_, _, args) in CASES {
        assert_eq!(loft(args).stdout, loft(args).stdout);
    }
}

#[test]
fn every_golden_input_parses() {
    for entry in std::fs::read_dir(golden_dir()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap().to_string();
        let args: Vec<&str> = match path.extension().and_then(|e| e.to_str()) {
            Some("lo") | Some("lo1") if !name.starts_with("bad_") => vec!["check", &name],
            Some("net") => vec!["petri", "encode", &name],
            Some("dlp") => vec!["dlp", "lfp", &name],
            _ => continue,
        };
        assert_eq!(loft(&args).status.code(), Some(0), "{name}");
    }
}

#[test]
fn running_example_fixpoint() {
    let r = report(&["saturate", "lo_example.lo"]);
    assert_eq!(r["status"], "fixpoint");
    let mut got = strings(&r["result"]["fixpoint"]);
    got.sort();
    let mut want = ["{c:1, d:1}", "{c:1, f:1}", "{b:1, c:1}", "{a:1}", "{e:2}"].map(String::from).to_vec();
    want.sort();
    assert_eq!(got, want);
    assert!(r["digest"].as_str().unwrap().starts_with("sha256:"));
    assert!(r.get("wall_time_ms").is_none());
}

#[test]
fn lo1_example_reaches_nine_constraints_in_four_rounds() {
    let r = report(&["saturate1", "lo1_example.lo1", "--max-iters", "10"]);
    assert_eq!(r["status"], "fixpoint");
    assert_eq!(r["iterations"], 4);
    assert_eq!(r["result"]["constraints"].as_array().unwrap().len(), 9);
    let first = &r["result"]["constraints"][0][0];
    assert_eq!(first["atom"], "a");
    assert!(first["op"] == "eq" || first["op"] == "geq");
}

#[test]
fn doubling_hits_the_bound() {
    let out = loft(&["saturate1", "doubling.lo1", "--max-iters", "50"]);
    assert_eq!(out.status.code(), Some(2));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["status"], "iteration_bound");
    let cs = r["result"]["constraints"].as_array().unwrap();
    assert_eq!(cs.len(), 50);
    assert!(cs.iter().all(|c| c[0]["op"] == "eq"));
}

#[test]
fn petri_verdicts() {
    assert_eq!(report(&["petri", "cover", "mutex.net"])["status"], "not_covered");
    assert_eq!(report(&["petri", "cover", "lockless.net"])["status"], "covered");
    assert_eq!(report(&["petri", "cover", "transfer.net", "--max-iters", "12"])["status"], "covered");
    let explore = report(&["petri", "explore", "mutex.net", "--steps", "12", "--max-size", "10"]);
    assert_eq!(explore["result"]["covers_target"], false);
}

#[test]
fn transfer_cover_with_a_tiny_bound_is_inconclusive() {
    let out = loft(&["petri", "cover", "transfer.net", "--max-iters", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn proof_has_the_expected_depth() {
    let r = report(&["prove", "lo_example.lo", "--goal", "e, e", "--depth", "8"]);
    assert_eq!(r["status"], "proved");
    assert_eq!(r["result"]["depth"], 7);
    assert_eq!(r["result"]["proof"]["conclusion"], "e, e");
}

#[test]
fn shallow_proof_search_is_inconclusive() {
    let out = loft(&["prove", "lo_example.lo", "--goal", "e, e", "--depth", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unprovable_goal_is_a_definite_negative() {
    let out = loft(&["prove", "lo_example.lo", "--goal", "b", "--depth", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["status"], "exhausted");
}

#[test]
fn dlp_results() {
    let lfp = report(&["dlp", "lfp", "disjunctive.dlp"]);
    assert_eq!(lfp["result"]["clauses"], serde_json::json!([["p", "q"], ["r"], ["s"]]));
    let refute = report(&["dlp", "refute", "disjunctive.dlp", "--goal", "p ; q"]);
    assert_eq!(refute["status"], "refuted");
    let steps = refute["result"]["derivation"].as_array().unwrap();
    assert_eq!(steps.last().unwrap(), &serde_json::json!([]));
    let chain = report(&["dlp", "compare", "chain.lo"]);
    assert_eq!(chain["result"]["sound"], true);
    assert_eq!(chain["result"]["complete"], true);
}

#[test]
fn parse_errors_carry_positions() {
    let out = loft(&["check", "bad_dialect.lo"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad_dialect.lo:3:6:"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn goal_errors_point_at_the_flag() {
    let out = loft(&["prove", "lo_example.lo", "--goal", "e, zz"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--goal:1:4:"), "{err}");
}

#[test]
fn lo_engine_rejects_lo1_programs() {
    let out = loft(&["saturate", "lo1_example.lo1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("LO1 engine"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(loft(&["saturate", "lo_example.lo", "--bogus"]).status.code(), Some(1));
    assert_eq!(loft(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(loft(&["saturate", "missing.lo"]).status.code(), Some(1));
    assert_eq!(loft(&["--help"]).status.code(), Some(0));
    assert_eq!(loft(&["--version"]).status.code(), Some(0));
}

#[test]
fn text_format_and_timing() {
    let out = loft(&["--format", "text", "saturate", "lo_example.lo"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("status: fixpoint\niterations: 4\n"));
    let r = report(&["saturate", "lo_example.lo", "--timing"]);
    assert!(r["wall_time_ms"].is_u64());
}

#[test]
fn dlp_compare_needs_distinct_heads() {
    let out = loft(&["dlp", "compare", "lo_example.lo"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("repeated in head"));
}
