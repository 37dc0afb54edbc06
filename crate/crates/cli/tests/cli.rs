use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minprime"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn beatty_csv_matches_golden_for_any_worker_count() {
    let args = ["sum", "--set", "beatty:pi", "--limit", "1e5", "--checkpoints", "10,100,...,1e5", "--format", "csv"];
    let want = golden("beatty_pi_1e5.csv");
    for workers in ["1", "3"] {
        let mut a = args.to_vec();
        a.extend(["--workers", workers]);
        assert_eq!(stdout(&a), want);
    }
}

#[test]
fn beatty_table_matches_golden() {
    let out = stdout(&["sum", "--set", "beatty:pi", "--limit", "1e5", "--checkpoints", "10,100,...,1e5"]);
    assert_eq!(out, golden("beatty_pi_1e5.table"));
    assert!(out.trim_end().ends_with("∞ | 0.31831"));
}

#[test]
fn sato_tate_csv_matches_golden() {
    let out = stdout(&[
        "sato-tate", "--curve", "-1,1", "--interval", "pi/3,2pi/3", "--limit", "1e4", "--checkpoints", "100,1000",
        "--format", "csv",
    ]);
    assert_eq!(out, golden("sato_tate_1e4.csv"));
}

#[test]
fn sato_tate_table_reports_the_measure() {
    let out = stdout(&["sato-tate", "--limit", "1000"]);
    assert!(out.contains("measure | 0.60900"), "{out}");
    assert!(out.contains("∞ | 0.60900"), "{out}");
}

#[test]
fn full_interval_equals_all_primes() {
    let st = stdout(&["sato-tate", "--interval", "0,pi", "--limit", "1e4", "--format", "csv"]);
    let all = stdout(&["sum", "--set", "all", "--limit", "1e4", "--format", "csv"]);
    assert_eq!(st, all);
}

#[test]
fn gaussian_field_file() {
    let out = stdout(&[
        "sum", "--field", "fields/qi.field", "--set", "split:1mod8", "--limit", "1e4", "--checkpoints", "10,100,1000",
        "--format", "csv",
    ]);
    assert_eq!(out, golden("qi_split_1mod8_1e4.csv"));
    let table = stdout(&["sum", "--field", "fields/qi.field", "--set", "split:1mod8", "--limit", "1e3"]);
    assert!(table.trim_end().ends_with("∞ | 0.50000"), "{table}");
}

#[test]
fn out_flag_writes_the_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.csv");
    let table = stdout(&["sum", "--set", "ap:1mod4", "--limit", "1000", "--out", path.to_str().unwrap()]);
    assert!(table.contains("∞ | 0.50000"));
    let csv = fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("X,value,error_bound\n1000,"));
}

#[test]
fn config_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(root().join("fields/qi.field"), dir.path().join("qi.field")).unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(
        &cfg,
        "set = \"split:1mod8\"\nfield = \"qi.field\"\nlimit = \"1e4\"\ncheckpoints = [10, 100, \"1e3\"]\nformat = \"csv\"\nworkers = 2\n",
    )
    .unwrap();
    assert_eq!(stdout(&["sum", "--config", cfg.to_str().unwrap()]), golden("qi_split_1mod8_1e4.csv"));

    // flags win over the file
    let out = stdout(&["sum", "--config", cfg.to_str().unwrap(), "--limit", "100", "--checkpoints", "10"]);
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn verify_passes_and_negative_control_fails() {
    let out = run(&["verify", "--limit", "2000"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("PASS")), "{text}");

    let out = run(&["verify", "--limit", "2000", "--corrupt-mu"]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8(out.stdout).unwrap().contains("FAIL duality"));

    let out = run(&["verify", "--field", "fields/qi.field", "--limit", "2000", "--set", "finite:2,5"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["sum", "--set", "bogus", "--limit", "100"]), Some(2));
    assert_eq!(code(&["sum", "--set", "all"]), Some(2));
    assert_eq!(code(&["sum", "--limit", "100", "--checkpoints", "1000"]), Some(2));
    assert_eq!(code(&["sum", "--limit", "100", "--workers", "0"]), Some(2));
    assert_eq!(code(&["sum", "--set", "all", "--limit", "1e12"]), Some(3));
    assert_eq!(code(&["sum", "--set", "beatty:1.5@40", "--limit", "100"]), Some(4));
    assert_eq!(code(&["sato-tate", "--curve", "0,0", "--limit", "100"]), Some(2));
    assert_eq!(code(&["sato-tate", "--interval", "2,1", "--limit", "100"]), Some(2));
}

#[test]
fn runs_are_byte_stable() {
    let args = ["sum", "--set", "quadratic:5:1&beatty:e;density=0.159", "--limit", "3e4", "--format", "csv"];
    assert_eq!(stdout(&args), stdout(&args));
}
