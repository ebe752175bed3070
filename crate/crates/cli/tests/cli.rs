use std::path::{Path, PathBuf};
use std::process::Command;

use mdpconv_cli::format::MatrixFile;
use serde_json::Value;
use tempfile::TempDir;

const H: &str = "field 2\nmatrix 2 3\n0 1 1\n0\n1 1\n0\n1 1\n1 1\n";
const H_TILDE: &str = "field 2\nmatrix 2 3\n0 1\n0\n1\n0\n1\n1\n";
const GF3_MDP: &str = "field 3\nmatrix 1 2\n1 1\n1 2\n";

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", self.stdout))
    }
}

fn mdpconv(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_mdpconv")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn degree_of_example_matrix() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.txt", H);
    let r = mdpconv(&["--json", "degree", s(&h)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    assert_eq!(j["degree"], 1);
    assert_eq!(j["row_degree_sum"], 3);
    assert_eq!(j["max_minor_degree"], 3);
    assert_eq!(j["left_prime"], false);
}

#[test]
fn mdp_reports_both_index_conditions() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "g3.txt", GF3_MDP);
    for mode in ["literal", "structural"] {
        let j = mdpconv(&["--json", "mdp", s(&f), "--side", "parity", "--j", "1", "--mode", mode]).json();
        assert_eq!(j["mode"], mode);
        assert_eq!(j["literal"]["index_sets"], 1);
        assert_eq!(j["structural"]["index_sets"], 5);
        assert_eq!(j["holds"], true);
    }
}

#[test]
fn verify_runs_the_full_audit() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "g3.txt", GF3_MDP);
    let r = mdpconv(&["--json", "verify", s(&f), "--n", "2", "--k", "1", "--delta", "1"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    assert_eq!(j["passed"], true);
    assert_eq!(j["mdp_structural"]["holds"], true);
    assert_eq!(j["witness_r"], 1);

    let t = write(&dir, "ht.txt", H_TILDE);
    let j = mdpconv(&["--json", "verify", s(&t), "--n", "3", "--k", "1", "--delta", "1", "--r", "0", "--rows", "1"]).json();
    assert_eq!(j["rank_full"], true);
    assert_eq!(j["shape"], serde_json::json!([3, 3]));
    assert_eq!(j["implication_ok"], true);

    let r = mdpconv(&["verify", s(&f), "--n", "3", "--k", "1", "--delta", "1"]);
    assert_eq!(r.code, 2);
}

#[test]
fn counterexample_and_example_commands() {
    let j = mdpconv(&["--json", "counterexample", "--n", "5", "--k", "2", "--delta", "1", "--q", "11"]).json();
    assert_eq!(j["criterion_holds"], true);
    assert_eq!(j["left_prime"], false);
    assert_eq!(j["code_degree"], 0);
    assert_eq!(j["vanishes_at_one"], true);
    let j = mdpconv(&["--json", "counterexample", "--n", "5", "--k", "2", "--delta", "1", "--q", "11", "--side", "generator"])
        .json();
    assert_eq!(j["criterion_holds"], true);
    assert_eq!(j["left_prime"], false);

    let j = mdpconv(&["--json", "example-3-1"]).json();
    assert_eq!(j["degree"], 1);
    assert_eq!(j["h_left_prime"], false);
    assert_eq!(j["h_tilde_left_prime"], true);
    assert_eq!(j["prime_part_row_equivalent"], true);
}

#[test]
fn primeness_methods_agree_from_the_command_line() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.txt", H);
    let t = write(&dir, "ht.txt", H_TILDE);
    for method in ["minor_gcd", "smith", "right_inverse"] {
        assert_eq!(mdpconv(&["--json", "leftprime", s(&h), "--method", method]).json()["left_prime"], false);
        assert_eq!(mdpconv(&["--json", "leftprime", s(&t), "--method", method]).json()["left_prime"], true);
    }
}

#[test]
fn algebra_commands() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.txt", H);
    let j = mdpconv(&["--json", "smith", s(&h)]).json();
    assert_eq!(j["invariant_factors"], serde_json::json!([[1, 1], [1, 1]]));
    let j = mdpconv(&["--json", "rowreduce", s(&h)]).json();
    assert_eq!(j["row_degree_sum"], 3);
    let j = mdpconv(&["--json", "kernel", s(&h)]).json();
    assert_eq!(j["k"], 1);
    let j = mdpconv(&["--json", "sliding", s(&h), "--j", "1"]).json();
    assert_eq!((j["rows"].clone(), j["cols"].clone()), (4.into(), 6.into()));
}

#[test]
fn distances() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "g3.txt", GF3_MDP);
    let j = mdpconv(&["--json", "profile", s(&f)]).json();
    assert_eq!(j["profile"], serde_json::json!([2, 3, 4]));
    assert_eq!(j["mdp"], true);
    let j = mdpconv(&["--json", "freedist", s(&f)]).json();
    assert_eq!(j["free_distance"], 4);
    assert_eq!(j["certified"], true);
    let j = mdpconv(&["--json", "coldist", s(&f), "--j", "2"]).json();
    assert_eq!(j["column_distance"], 4);
}

#[test]
fn oversized_oracle_is_a_verdict() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "g3.txt", GF3_MDP);
    let r = mdpconv(&["--json", "coldist", s(&f), "--j", "6", "--oracle-cap", "100"]);
    assert_eq!(r.code, 0);
    let j = r.json();
    assert_eq!(j["oracle_too_large"], true);
    assert_eq!(j["verdict"], "oracle too large");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "field 2\nmatrix 1 2\n1\n2\n");
    let r = mdpconv(&["degree", s(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 4"), "{}", r.stderr);
    assert_eq!(mdpconv(&["nonsense"]).code, 1);
    assert_eq!(mdpconv(&["mdp"]).code, 1);
    assert_eq!(mdpconv(&["--help"]).code, 0);
    let deficient = write(&dir, "z.txt", "field 2\nmatrix 1 2\n0\n0\n");
    assert_eq!(mdpconv(&["degree", s(&deficient)]).code, 2);
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["--json", "search", "--n", "2", "--k", "1", "--delta", "1", "--q", "5", "--strategy", "random", "--budget", "60", "--seed", "11"];
    let a = mdpconv(&args);
    let b = mdpconv(&args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.json()["hit_count"].as_u64().unwrap() > 0);
}

#[test]
fn file_round_trip_and_extension_fields() {
    let dir = TempDir::new().unwrap();
    let text = "# comment\nfield 2^2 1 1 1\nmatrix 1 3\n(1,0)\n(0,1) ( 1 , 1 )\n0\n";
    let mf = MatrixFile::parse(text).unwrap();
    let canonical = mf.to_text();
    assert_eq!(canonical, "field 2^2 1 1 1\nmatrix 1 3\n(1,0)\n(0,1) (1,1)\n0\n");
    assert_eq!(MatrixFile::parse(&canonical).unwrap().to_text(), canonical);
    let f = write(&dir, "ext.txt", &canonical);
    let j = mdpconv(&["--json", "degree", s(&f)]).json();
    assert_eq!(j["degree"], 1);
    assert_eq!(j["left_prime"], true);
}
