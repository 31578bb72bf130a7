use std::process::{Command, Output};

fn globent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_globent")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn help_exits_cleanly() {
    let o = globent(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    for sub in ["sweep", "table1", "gl", "oracle"] {
        assert!(stdout(&o).contains(sub));
    }
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(globent(&["sweep", "--steps", "abc"]).status.code(), Some(1));
    assert_eq!(globent(&["frobnicate"]).status.code(), Some(1));

    let o = globent(&["sweep", "--lambda-min", "0", "--lambda-max", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    let detail: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(detail["error"], "invalid_argument");
}

#[test]
fn numerical_failures_exit_with_two() {
    let o = globent(&["gl", "--lambda", "1", "--l", "1,2", "--quad-max-nodes", "16", "--quad-tol", "1e-15"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    let detail: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(detail["error"], "quadrature_nonconvergence");
}

#[test]
fn table1_to_stdout() {
    let o = globent(&["table1", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("family,n,eg1_closed"));
    assert!(text.contains("GHZ,4,1,0.666666666667,0.666666666667,1,0.666666666667,0.666666666667,"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn sweep_to_file_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = globent(&[
            "sweep", "--steps", "11", "--refine", "none", "--lmax", "3", "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(path).unwrap()
    };
    let a = run("a.csv");
    assert_eq!(a, run("b.csv"));
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 12);
    assert!(text.lines().nth(1).unwrap().starts_with("0,0,0,0,0,0,0,0"));
}

#[test]
fn oracle_refuses_broken_symmetry_side_without_override() {
    assert_eq!(globent(&["oracle", "--n", "6,8,10", "--lambdas", "1.5", "--lmax", "2"]).status.code(), Some(1));
    let o = globent(&["oracle", "--n", "6,8,10", "--lambdas", "1.5", "--lmax", "2", "--allow-above-critical"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert!(stdout(&o).contains("above_critical"));
}
