use std::fs;
use std::process::Command;

fn rdpg(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_rdpg")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = rdpg(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn simulate_writes_the_experiment_schema() {
    let text = stdout(&["simulate", "--n-values", "40", "--replicates", "2", "--seed", "3"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "experiment,n,replicate,seed,mse_per_vertex,loo_error_estimated,loo_error_true,k,d");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("simulation,40,0,"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sim.cfg");
    let out = dir.path().join("out.csv");
    fs::write(&cfg, format!("n_values=30\nreplicates=1\nseed=1\nk_rule=3\noutput_path={}\n", out.display())).unwrap();
    let printed = stdout(&["simulate", "--config", cfg.to_str().unwrap(), "--seed", "2", "--k", "5"]);
    assert!(printed.is_empty());
    let text = fs::read_to_string(&out).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[1], "30");
    assert_eq!(row[7], "5");
    let from_file_seed = stdout(&["simulate", "--config", cfg.to_str().unwrap(), "--output", "/dev/stdout"]);
    assert_ne!(from_file_seed.lines().nth(1).unwrap(), text.lines().nth(1).unwrap());
}

#[test]
fn embed_and_classify_files() {
    let dir = tempfile::tempdir().unwrap();
    let (e, l) = (dir.path().join("e"), dir.path().join("l"));
    fs::write(&e, "0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n2 3\n").unwrap();
    fs::write(&l, "0 a\n1 a\n2 a\n3 b\n4 b\n5 b\n").unwrap();
    let coords = stdout(&["embed", "--edges", e.to_str().unwrap(), "--d", "2"]);
    assert_eq!(coords.lines().count(), 7);
    assert!(coords.starts_with("vertex,x1,x2\n"));
    let row = stdout(&["classify", "--edges", e.to_str().unwrap(), "--labels", l.to_str().unwrap(), "--d", "2", "--k", "1"]);
    assert!(row.lines().nth(1).unwrap().starts_with("classify,6,0,"));
}

#[test]
fn diagnose_and_grid_on_the_surrogate() {
    let text = stdout(&["diagnose", "--n", "120", "--seed", "5"]);
    assert!(text.starts_with("name,n,d,delta,gamma,observed,bound,satisfied,seed\n"));
    assert_eq!(text.lines().count(), 9);
    let grid = stdout(&["grid", "--surrogate", "--d-values", "2,5", "--k-values", "9"]);
    assert_eq!(grid.lines().count(), 3);
}

#[test]
fn bad_inputs_fail_with_messages() {
    let dir = tempfile::tempdir().unwrap();
    let e = dir.path().join("e");
    fs::write(&e, "2 2\n").unwrap();
    let out = rdpg(&["embed", "--edges", e.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    assert!(!rdpg(&["classify"]).status.success());
    assert!(!rdpg(&["simulate", "--n-values", "3"]).status.success());
}
