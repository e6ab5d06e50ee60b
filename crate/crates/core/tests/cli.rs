use std::fs;
use std::path::PathBuf;

use isostab::cli::{run_with, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use isostab::ortho::{defect, read_pairs};
use isostab::{NormSpec, Space};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn isostab(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("isostab").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_config(name: &str, json: &str) -> String {
    let path = scratch(name);
    fs::write(&path, json).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn gen_pairs_records_are_orthogonal() {
    let r = isostab(&[
        "gen-pairs",
        "--dim",
        "2",
        "--norm",
        "l1",
        "--samples",
        "5",
        "--seed",
        "1",
    ]);
    assert_eq!(r.code, EXIT_PASS, "{}", r.stderr);
    let space = Space::new(2, NormSpec::l1()).unwrap();
    let pairs = read_pairs(&r.stdout, &space).unwrap();
    assert_eq!(pairs.len(), 5);
    for p in &pairs {
        assert!(defect(&p.x, &p.y, &space).unwrap() <= 1e-9);
    }
}

#[test]
fn gen_pairs_writes_to_out() {
    let path = scratch("pairs.txt");
    let r = isostab(&[
        "gen-pairs",
        "--seed",
        "3",
        "--samples",
        "20",
        "--norm",
        "linf",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(r.code, EXIT_PASS);
    let space = Space::new(2, NormSpec::linf()).unwrap();
    assert_eq!(
        read_pairs(&fs::read_to_string(&path).unwrap(), &space)
            .unwrap()
            .len(),
        20
    );
}

#[test]
fn nonzero_k_at_origin_is_a_hypothesis_error() {
    let cfg = write_config(
        "k_nonzero.json",
        r#"{
          "space": {"dim": 2, "norm": "l2"},
          "codomain": {"dim": 1, "norm": "l2"},
          "maps": {
            "f": {"kind": "expression", "expr": "x[0]^2"},
            "k": {"kind": "expression", "expr": "x[1]^2 + 1"}
          },
          "quadruple": {"f": "f", "g": "f", "h": "f", "k": "k"},
          "verification": {"seed": 1, "n_pairs": 10}
        }"#,
    );
    let r = isostab(&["verify-pexider", "--config", &cfg]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.stderr.contains("hypothesis"), "{}", r.stderr);
    assert!(r.stderr.contains("k(0)"), "{}", r.stderr);
}

#[test]
fn usage_and_config_errors_exit_2() {
    assert_eq!(
        isostab(&["demo", "--seed", "1", "--bogus"]).code,
        EXIT_USAGE
    );
    assert_eq!(isostab(&["no-such-command"]).code, EXIT_USAGE);
    assert_eq!(isostab(&["demo"]).code, EXIT_USAGE, "seed is mandatory");
    assert_eq!(
        isostab(&["check-norm", "--seed", "1", "--norm", "lp:0.5"]).code,
        EXIT_USAGE
    );

    let malformed = write_config("malformed.json", r#"{"space": {"dim": 2, "norm": "l2"},"#);
    let r = isostab(&["verify-pexider", "--config", &malformed]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.stderr.contains("malformed config"));

    let unknown_field = write_config(
        "unknown_field.json",
        r#"{"space": {"dim": 2, "norm": "l2", "p": 3}}"#,
    );
    assert_eq!(
        isostab(&["check-norm", "--seed", "1", "--config", &unknown_field]).code,
        EXIT_USAGE
    );

    let unresolved = write_config(
        "unresolved.json",
        r#"{
          "maps": {"f": {"kind": "sum", "terms": ["q", "missing"]}, "q": {"kind": "zero"}},
          "quadruple": {"f": "f", "g": "f", "h": "f", "k": "f"},
          "verification": {"seed": 1}
        }"#,
    );
    let r = isostab(&["verify-pexider", "--config", &unresolved]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(
        r.stderr.contains("unresolved map name `missing`"),
        "{}",
        r.stderr
    );

    let cyclic = write_config(
        "cyclic.json",
        r#"{
          "maps": {"a": {"kind": "negate_arg", "map": "b"}, "b": {"kind": "scale", "factor": 2, "map": "a"}},
          "quadruple": {"f": "a", "g": "a", "h": "a", "k": "a"},
          "verification": {"seed": 1}
        }"#,
    );
    let r = isostab(&["verify-pexider", "--config", &cyclic]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.stderr.contains("a -> b -> a"), "{}", r.stderr);
}

#[test]
fn failed_bound_exits_1_with_witness() {
    // x[0] is not orthogonally constant, so its certified ε of 0 is violated.
    let cfg = write_config(
        "projection.json",
        r#"{
          "space": {"dim": 2, "norm": "l2"},
          "maps": {"p": {"kind": "expression", "expr": "x[0]"}},
          "constant": {"map": "p", "x0": [1.0, 0.0]},
          "verification": {"seed": 4, "n_pairs": 200}
        }"#,
    );
    let r = isostab(&["verify-constant", "--config", &cfg]);
    assert_eq!(r.code, EXIT_FAIL);
    let fail = r
        .stdout
        .lines()
        .find(|l| l.starts_with("FAIL f_minus_c:"))
        .expect(&r.stdout);
    assert!(fail.contains("witness x=["));
    // The sampled consistency row still holds.
    assert!(r
        .stdout
        .lines()
        .any(|l| l.starts_with("f_minus_c_vs_measured") && l.ends_with("PASS")));
}

#[test]
fn demo_table_has_every_row() {
    let r = isostab(&["demo", "--seed", "42", "--samples", "500"]);
    assert_eq!(r.code, EXIT_PASS, "{}{}", r.stdout, r.stderr);
    for row in [
        "pexider",
        "two_fo_minus_ho_ko",
        "f_odd_cauchy",
        "g_odd_cauchy",
        "ell_odd_cauchy",
        "u_quadratic",
        "v_constant",
        "v_minus_c",
        "reassembly",
    ] {
        assert!(
            r.stdout
                .lines()
                .any(|l| l.starts_with(row) && l.ends_with("PASS")),
            "missing {row}:\n{}",
            r.stdout
        );
    }
}

#[test]
fn flags_override_config() {
    let cfg = write_config(
        "override.json",
        r#"{"space": {"dim": 4, "norm": "l1"}, "verification": {"seed": 9, "n_pairs": 50}}"#,
    );
    let r = isostab(&[
        "check-norm",
        "--config",
        &cfg,
        "--dim",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(r.code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["schema"], "iso-stab-report/1");
    assert_eq!(v["config"]["experiment"]["space"]["dim"], 3);
    assert_eq!(v["config"]["experiment"]["space"]["norm"], "l1");
    assert_eq!(v["report"]["samples"], 50);
    assert_eq!(v["report"]["seed"], 9);
}

#[test]
fn csv_report_rows_match_bounds() {
    let path = scratch("demo.csv");
    let r = isostab(&[
        "demo",
        "--seed",
        "5",
        "--samples",
        "300",
        "--out",
        path.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert_eq!(r.code, EXIT_PASS);
    let csv = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "name,measured,bound,pass,margin,witness_x,witness_y"
    );
    assert_eq!(lines.len(), 10);
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 7);
        assert_eq!(fields[3], "true");
        assert_eq!(fields[5].split(' ').count(), 3);
    }
}

#[test]
fn witness_homogeneity_finds_l1_witness() {
    let r = isostab(&[
        "witness-homogeneity",
        "--seed",
        "2",
        "--norm",
        "l1",
        "--format",
        "json",
    ]);
    assert_eq!(r.code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert!(v["report"]["defect"].as_f64().unwrap() > 0.1);
}

#[test]
fn demo_reports_are_byte_identical() {
    let (a, b) = (scratch("demo_a.json"), scratch("demo_b.json"));
    for p in [&a, &b] {
        assert_eq!(
            isostab(&[
                "demo",
                "--seed",
                "42",
                "--samples",
                "1000",
                "--out",
                p.to_str().unwrap()
            ])
            .code,
            0
        );
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn help_documents_precedence() {
    let r = isostab(&["--help"]);
    assert_eq!(r.code, EXIT_PASS);
    assert!(r.stdout.contains("command-line flags, then the --config"));
}
