//! End-to-end runs of the compiled binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn rrw(args: &[&str]) -> Output {
	Command::new(env!("CARGO_BIN_EXE_rrw"))
		.args(args)
		.output()
		.expect("binary spawns")
}

fn stdout(out: &Output) -> String {
	String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
	String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn scratch(name: &str) -> PathBuf {
	let dir = std::env::temp_dir().join(format!("rrw-cli-{}", std::process::id()));
	std::fs::create_dir_all(&dir).expect("scratch dir");
	dir.join(name)
}

#[test]
fn figure1_output_matches_the_golden_file() {
	let out = rrw(&["figure1", "--n", "4"]);
	assert_eq!(out.status.code(), Some(0));
	assert_eq!(stdout(&out), include_str!("data/figure1_n4.txt"));
}

#[test]
fn rank_prints_the_documented_examples() {
	for (args, want) in [
		(vec!["rank", "--complete", "4", "--divisor", "1,1,1,1"], "2\n"),
		(vec!["rank", "--complete", "3", "--divisor", "0,0,-1"], "-1\n"),
		(vec!["rank", "--dipole", "3", "--divisor", "2,0"], "0\n"),
		(vec!["rank-kn", "--n", "4", "--divisor", "1,1,1,1"], "2\n"),
		(vec!["rank", "--complete", "5", "--divisor", "2,1,1,1,0", "--verify"], "1\n"),
	] {
		let out = rrw(&args);
		assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
		assert_eq!(stdout(&out), want, "{args:?}");
	}
}

#[test]
fn usage_errors_exit_with_code_one() {
	for args in [
		vec!["rank", "--complete", "4"],
		vec!["rank", "--complete", "4", "--dipole", "2", "--divisor", "0,0,0,0"],
		vec!["rank", "--complete", "4", "--divisor", "1,1"],
		vec!["rank", "--complete", "4", "--divisor", "1,1,x,1"],
		vec!["rank", "--complete", "1", "--divisor", "1"],
		vec!["weights", "--dipole", "2", "--deg-min", "0", "--deg-max", "3"],
		vec!["no-such-command"],
	] {
		let out = rrw(&args);
		assert_eq!(out.status.code(), Some(1), "{args:?}");
	}
	let help = rrw(&["--help"]);
	assert_eq!(help.status.code(), Some(0));
}

#[test]
fn fault_injection_reports_a_violation_and_exits_two() {
	let out = rrw(&["check-duality", "--complete", "3", "--fault-inject"]);
	assert_eq!(out.status.code(), Some(2));
	let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json report");
	assert_eq!(report["holds"], serde_json::Value::Bool(false));
	assert!(report["first_violation"].is_array());
}

#[test]
fn duality_reports_carry_the_expected_class() {
	for source in [["--complete", "4"], ["--dipole", "5"]] {
		let out = rrw(&["check-duality", source[0], source[1]]);
		assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
		let report: serde_json::Value =
			serde_json::from_str(&stdout(&out)).expect("json report");
		assert_eq!(report["holds"], serde_json::Value::Bool(true));
		assert_eq!(report["identity"], "dual-weight-transport");
		assert_eq!(
			report["self_duality"]["matches_expected_class"],
			serde_json::Value::Bool(true),
			"{source:?}"
		);
	}
	let k4 = rrw(&["check-duality", "--complete", "4"]);
	let report: serde_json::Value = serde_json::from_str(&stdout(&k4)).expect("json report");
	assert_eq!(report["self_duality"]["expected"], serde_json::json!([2, 2, 2, 2]));
	let d5 = rrw(&["check-duality", "--dipole", "5"]);
	let report: serde_json::Value = serde_json::from_str(&stdout(&d5)).expect("json report");
	assert_eq!(report["self_duality"]["expected"], serde_json::json!([4, 4]));
}

#[test]
fn weights_are_byte_stable_and_closed_form_checked() {
	let args = [
		"weights", "--complete", "4", "--lo", "-1,-1,-1,-1", "--hi", "3,3,3,9",
		"--deg-min", "-1", "--deg-max", "9",
	];
	let first = rrw(&args);
	assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
	let second = rrw(&args);
	assert_eq!(first.stdout, second.stdout);
	let table: serde_json::Value = serde_json::from_str(&stdout(&first)).expect("json table");
	assert_eq!(table["n"], 4);
	assert!(table["entries"].as_array().is_some_and(|e| !e.is_empty()));

	let out_path = scratch("w.csv");
	let closed_path = scratch("w.closed.csv");
	let mut file_args: Vec<&str> = args.to_vec();
	file_args.extend(["--format", "csv", "--out"]);
	let out_str = out_path.to_str().expect("utf-8 path");
	file_args.push(out_str);
	let run = rrw(&file_args);
	assert_eq!(run.status.code(), Some(0), "{}", stderr(&run));
	let engine = std::fs::read_to_string(&out_path).expect("table file");
	let closed = std::fs::read_to_string(&closed_path).expect("closed-form file");
	assert_eq!(engine, closed);
	assert!(engine.starts_with("d_1,d_2,d_3,d_4,w\n"));
}

#[test]
fn weights_kn_tabulates_the_binomial_pattern() {
	let out = rrw(&["weights-kn", "--n", "4", "--max-degree", "12", "--format", "csv"]);
	assert_eq!(out.status.code(), Some(0));
	assert_eq!(
		stdout(&out),
		"d_1,d_2,d_3,d_4,w\n0,0,0,0,1\n0,0,0,4,-2\n0,0,0,8,1\n"
	);
}

#[test]
fn extend_evaluates_and_flags_missing_points() {
	let input = scratch("coord.json");
	let mut samples = Vec::new();
	for t in -12i64..=12 {
		samples.push(serde_json::json!({"d": [t, 0], "v": t * t}));
		if t != 0 {
			samples.push(serde_json::json!({"d": [0, t], "v": -t}));
		}
	}
	std::fs::write(&input, serde_json::to_string(&samples).expect("json")).expect("write");
	let input_str = input.to_str().expect("utf-8 path");

	let ok = rrw(&["extend", "--mode", "coord", "--n", "2", "--input", input_str, "--eval", "3,4"]);
	assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
	assert_eq!(stdout(&ok), "5\n");

	let sparse = scratch("sparse.json");
	std::fs::write(&sparse, r#"[{"d":[0,0],"v":5},{"d":[0,1],"v":7}]"#).expect("write");
	let sparse_str = sparse.to_str().expect("utf-8 path");
	let missing = rrw(&[
		"extend", "--mode", "strip", "--n", "2", "--input", sparse_str, "--eval", "2,2",
	]);
	assert_eq!(missing.status.code(), Some(1));
	assert!(stderr(&missing).contains("(-1, 2)"), "{}", stderr(&missing));

	let off_domain = rrw(&[
		"extend", "--mode", "coord", "--n", "2", "--input", sparse_str, "--eval", "1,1",
	]);
	assert_eq!(off_domain.status.code(), Some(1));

	let budget = rrw(&[
		"extend", "--mode", "strip", "--n", "2", "--input", sparse_str, "--eval", "2000,2000",
	]);
	assert_eq!(budget.status.code(), Some(3), "{}", stderr(&budget));
	assert!(stderr(&budget).contains("budget"), "{}", stderr(&budget));
}

#[test]
fn bench_prints_the_seed_and_passes_the_linearity_gate() {
	let out = rrw(&["bench-kn", "--sizes", "4e3,8e3", "--trials", "2", "--seed", "5"]);
	assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
	let text = stdout(&out);
	assert!(text.starts_with("seed 5\n"), "{text}");
	assert!(text.contains("\n4000 "), "{text}");
	assert!(text.contains("\n8000 "), "{text}");
	assert!(text.contains("doubling_ratio "), "{text}");
}
